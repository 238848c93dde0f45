#include "edgesync/riccati.h"

#include <cmath>
#include <sstream>

#include "edgesync/error.h"

namespace edgesync {
namespace {

constexpr int kMaxNewtonSteps = 100;
constexpr double kNewtonTol = 1e-10;

void CheckPair(const char* who, const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() == 0 || b.rows() != a.rows() || b.cols() == 0) {
    std::ostringstream os;
    os << who << ": incompatible shapes A " << a.rows() << "x" << a.cols()
       << ", B " << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

Matrix SymPseudoInverse(const Matrix& z) {
  const SymEigDecomposition eig = SymEig(z);
  const std::size_t n = z.rows();
  const double largest = eig.eigenvalues.back();
  if (!(largest > 0.0)) {
    throw Error(ErrorCode::kNotStabilizable,
                "Bass gain: controllability Gramian vanishes");
  }
  Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const double lambda = eig.eigenvalues[c];
    if (lambda <= 1e-10 * largest) continue;
    const Vector v = eig.eigenvectors.col(c);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) inv(i, j) += v[i] * v[j] / lambda;
    }
  }
  return inv;
}

}  // namespace

Matrix BassInitialGain(const Matrix& a, const Matrix& b) {
  CheckPair("BassInitialGain", a, b);
  const std::size_t n = a.rows();
  const double lambda = a.frobenius() + 1.0;
  const Matrix shifted = a + lambda * Matrix::Identity(n);
  // LyapunovSolve(F, Q) solves FᵀZ + ZF + Q = 0; with F = −(A + λI)ᵀ this
  // reads (A + λI)Z + Z(A + λI)ᵀ = Q.
  Matrix z;
  try {
    z = LyapunovSolve(-1.0 * shifted.transpose(),
                      2.0 * (b * b.transpose()));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kSingular) throw;
    throw Error(ErrorCode::kNotStabilizable,
                std::string("Bass gain: ") + err.what());
  }
  const Matrix gain = b.transpose() * SymPseudoInverse(z);

  const Matrix closed = a - b * gain;
  Matrix y;
  try {
    y = LyapunovSolve(closed, Matrix::Identity(n));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kSingular) throw;
    throw Error(ErrorCode::kNotStabilizable,
                "Bass gain: closed loop has eigenvalues on the imaginary axis");
  }
  if (!(MinSymEigenvalue(y) > 0.0)) {
    throw Error(ErrorCode::kNotStabilizable,
                "Bass gain: closed loop is not Hurwitz (pair not stabilizable)");
  }
  return gain;
}

double AriMargin(const Matrix& p, const Matrix& a, const Matrix& b, double rho,
                 double mu) {
  const Matrix pb = p * b;
  const Matrix lhs = p * a + a.transpose() * p - rho * (pb * pb.transpose()) +
                     2.0 * mu * p;
  return MinSymEigenvalue(-1.0 * lhs);
}

LinearDesign SolveAri(const Matrix& a, const Matrix& b, double rho,
                      double mu) {
  CheckPair("SolveAri", a, b);
  if (!(rho > 0.0) || !(mu > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "SolveAri: need rho > 0, mu > 0");
  }
  const std::size_t n = a.rows();
  const Matrix eye = Matrix::Identity(n);
  const Matrix as = a + mu * eye;
  const Matrix bs = std::sqrt(rho) * b;

  LinearDesign design;
  design.a = a;
  design.b = b;
  design.rho = rho;
  design.mu_target = mu;

  Matrix k = BassInitialGain(as, bs);
  Matrix p;
  bool converged = false;
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    const Matrix closed = as - bs * k;
    Matrix next = LyapunovSolve(closed, eye + k.transpose() * k);
    design.iterates.push_back(next);
    const bool small_change =
        step > 0 &&
        MaxAbsDiff(next, p) <= kNewtonTol * std::max(1.0, next.max_abs());
    p = std::move(next);
    k = bs.transpose() * p;
    if (small_change) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "SolveAri: Newton-Kleinman did not converge in 100 steps");
  }

  const Matrix pb = p * bs;
  design.are_residual =
      (as.transpose() * p + p * as - pb * pb.transpose() + eye).max_abs();
  design.certificate = MakeCertificate(p, rho, mu);
  design.gain = b.transpose() * design.certificate.p;
  return design;
}

}  // namespace edgesync
