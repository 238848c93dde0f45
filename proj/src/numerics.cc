#include "edgesync/numerics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "edgesync/error.h"

namespace edgesync {
namespace {

constexpr int kMaxJacobiSweeps = 100;

void RequireSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape " << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

void RequireSymmetric(const Matrix& a, const char* op) {
  if (!a.square()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(op) + ": matrix is not square");
  }
  const double scale = std::max(1.0, a.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-9 * scale) {
        std::ostringstream os;
        os << op << ": matrix is not symmetric at (" << i << "," << j << ")";
        throw Error(ErrorCode::kNonSymmetric, os.str());
      }
    }
  }
}

double OffDiagonalSumSquares(const Matrix& a) {
  double off = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) off += a(i, j) * a(i, j);
    }
  }
  return off;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "Matrix literal has ragged rows");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::FromRowMajor(std::size_t rows, std::size_t cols,
                            std::span<const double> entries) {
  if (entries.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "FromRowMajor: entry count does not match shape");
  }
  Matrix m(rows, cols);
  std::copy(entries.begin(), entries.end(), m.data_.begin());
  return m;
}

Matrix Matrix::Column(std::span<const double> entries) {
  return FromRowMajor(entries.size(), 1, entries);
}

Vector Matrix::col(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_col(std::size_t j, std::span<const double> values) {
  if (values.size() != rows_) {
    throw Error(ErrorCode::kDimensionMismatch, "set_col: length mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Matrix Matrix::abs() const {
  Matrix out = *this;
  for (double& v : out.data_) v = std::abs(v);
  return out;
}

Matrix Matrix::sym_part() const {
  if (!square()) {
    throw Error(ErrorCode::kDimensionMismatch, "sym_part: matrix not square");
  }
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    }
  }
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  RequireSameShape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  RequireSameShape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matrix product: " << a.rows() << "x" << a.cols() << " times "
       << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix-vector product: length mismatch");
  }
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = Dot(a.row(i), x);
  return y;
}

Matrix Kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
      }
    }
  }
  return k;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  RequireSameShape(a, b, "MaxAbsDiff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "Dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm2(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

SymEigDecomposition SymEig(const Matrix& input) {
  RequireSymmetric(input, "SymEig");
  const std::size_t n = input.rows();
  Matrix a = input.sym_part();
  Matrix v = Matrix::Identity(n);

  const double target = 1e-28 * std::max(a.frobenius() * a.frobenius(),
                                         std::numeric_limits<double>::min());
  bool converged = false;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (OffDiagonalSumSquares(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p, q); t is the smaller root of
        // t² + 2τt − 1 = 0.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && OffDiagonalSumSquares(a) > target) {
    throw Error(ErrorCode::kNoConvergence,
                "SymEig: Jacobi iteration did not converge in 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEigDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

double MinSymEigenvalue(const Matrix& a) {
  if (a.rows() == 0) return std::numeric_limits<double>::infinity();
  return SymEig(a.sym_part()).eigenvalues.front();
}

Matrix NullspaceSymPsd(const Matrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "NullspaceSymPsd: rel_tol must lie in (0, 1)");
  }
  const SymEigDecomposition eig = SymEig(a);
  const std::size_t n = a.rows();
  const double lambda_max = n == 0 ? 0.0 : eig.eigenvalues.back();
  const double threshold = rel_tol * std::max(1.0, lambda_max);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (eig.eigenvalues[i] <= threshold) kept.push_back(i);
  }
  Matrix basis(n, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    basis.set_col(c, eig.eigenvectors.col(kept[c]));
  }
  return basis;
}

Matrix SolveLinear(const Matrix& a, const Matrix& b) {
  if (!a.square()) {
    throw Error(ErrorCode::kDimensionMismatch, "SolveLinear: A not square");
  }
  if (b.rows() != a.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "SolveLinear: right-hand side has wrong row count");
  }
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix lu = a;
  Matrix x = b;
  const double threshold = 1e-12 * a.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    }
    if (std::abs(lu(pivot, k)) <= threshold) {
      std::ostringstream os;
      os << "SolveLinear: pivot " << lu(pivot, k) << " at column " << k
         << " below 1e-12 * ||A||_max";
      throw Error(ErrorCode::kSingular, os.str());
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(pivot, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / lu(k, k);
      if (factor == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= factor * x(k, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = x(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= lu(ii, k) * x(k, j);
      x(ii, j) = s / lu(ii, ii);
    }
  }
  return x;
}

Matrix LyapunovSolve(const Matrix& a, const Matrix& q) {
  if (!a.square()) {
    throw Error(ErrorCode::kDimensionMismatch, "LyapunovSolve: A not square");
  }
  if (q.rows() != a.rows() || q.cols() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "LyapunovSolve: Q shape does not match A");
  }
  RequireSymmetric(q, "LyapunovSolve");
  const std::size_t n = a.rows();
  // Unknown X(k, l) sits at index k*n + l; equation (i, j) reads
  //   Σ_k A(k,i) X(k,j) + Σ_k X(i,k) A(k,j) = −Q(i,j).
  Matrix system(n * n, n * n);
  Matrix rhs(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        system(row, k * n + j) += a(k, i);
        system(row, i * n + k) += a(k, j);
      }
      rhs(row, 0) = -q(i, j);
    }
  }
  const Matrix solution = SolveLinear(system, rhs);
  Matrix x = Matrix::FromRowMajor(n, n, solution.data());
  return x.sym_part();
}

}  // namespace edgesync
