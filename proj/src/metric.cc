#include "edgesync/metric.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "edgesync/error.h"

namespace edgesync {

MetricCertificate MakeCertificate(const Matrix& p, double rho, double mu,
                                  bool approximate) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kInvalidArgument, "certificate: rho must be >= 0");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::kInvalidArgument, "certificate: mu must be > 0");
  }
  const SymEigDecomposition eig = SymEig(p);
  if (eig.eigenvalues.empty() || !(eig.eigenvalues.front() > 0.0)) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "certificate: P is not positive definite");
  }
  MetricCertificate cert;
  cert.p = p.sym_part();
  cert.rho = rho;
  cert.mu = mu;
  cert.p_lower = eig.eigenvalues.front();
  cert.p_upper = eig.eigenvalues.back();
  cert.approximate = approximate;
  return cert;
}

double VerifyAriSampled(const MetricCertificate& cert, const AgentModel& model,
                        std::span<const Vector> samples) {
  const Matrix& p = cert.p;
  double worst = std::numeric_limits<double>::infinity();
  for (const Vector& x : samples) {
    const Matrix j = model.drift_jacobian(x);
    const Matrix pg = Matrix::Column(p * model.input(x));
    const Matrix lhs = p * j + j.transpose() * p -
                       cert.rho * (pg * pg.transpose()) + 2.0 * cert.mu * p;
    worst = std::min(worst, MinSymEigenvalue(-1.0 * lhs));
  }
  return worst;
}

KillingIntegrabilityResiduals VerifyKillingIntegrability(
    const MetricCertificate& cert, const AgentModel& model,
    std::span<const Vector> samples, double fd_step) {
  if (!(fd_step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fd_step must be positive");
  }
  const Matrix& p = cert.p;
  KillingIntegrabilityResiduals r;
  for (const Vector& x : samples) {
    const Matrix jg = model.input_jacobian(x);
    r.killing = std::max(r.killing, (p * jg + jg.transpose() * p).max_abs());

    const Vector gp = p * model.input(x);  // (gᵀP)ᵀ = P g
    Vector probe = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
      probe[i] = x[i] + fd_step;
      const double up = model.alpha(probe);
      probe[i] = x[i] - fd_step;
      const double down = model.alpha(probe);
      probe[i] = x[i];
      const double grad = (up - down) / (2.0 * fd_step);
      r.integrability = std::max(r.integrability, std::abs(grad - gp[i]));
    }
  }
  return r;
}

std::vector<Vector> SampleBall(std::span<const double> center, double radius,
                               std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = center.size();
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    Vector dir(n);
    double norm = 0.0;
    do {
      for (double& d : dir) d = normal(rng);
      norm = Norm2(dir);
    } while (norm == 0.0);
    const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
    Vector x(center.begin(), center.end());
    for (std::size_t i = 0; i < n; ++i) x[i] += r * dir[i] / norm;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace edgesync
