#pragma once

#include <span>
#include <vector>

#include "edgesync/models.h"
#include "edgesync/numerics.h"

namespace edgesync {

/// Constant contraction metric P with input weighting ρ, contraction rate μ
/// and spectral bounds p_lower·I ⪯ P ⪯ p_upper·I.
struct MetricCertificate {
  Matrix p;
  double rho = 0.0;
  double mu = 0.0;
  double p_lower = 0.0;
  double p_upper = 0.0;
  /// Set when P certifies a surrogate (e.g. a linearization) rather than the
  /// model itself.
  bool approximate = false;
};

/// Fills p_lower/p_upper from the spectrum of P. Throws kNotPositiveDefinite
/// if λ_min(P) <= 0, kNonSymmetric if P is not symmetric, and
/// kInvalidArgument for ρ < 0 or μ <= 0.
MetricCertificate MakeCertificate(const Matrix& p, double rho, double mu,
                                  bool approximate = false);

/// Worst sampled margin of the differential Riccati inequality for constant P:
///   min over x of λ_min(−[P J(x) + J(x)ᵀ P − ρ P g(x) g(x)ᵀ P + 2μ P]).
/// A nonnegative value means the inequality holds on every sample.
double VerifyAriSampled(const MetricCertificate& cert, const AgentModel& model,
                        std::span<const Vector> samples);

struct KillingIntegrabilityResiduals {
  double killing = 0.0;        // max ‖P ∂g/∂x + (∂g/∂x)ᵀ P‖_max
  double integrability = 0.0;  // max ‖∇α − gᵀP‖_max, ∇α by central differences
};

inline constexpr double kDefaultFdStep = 1e-5;

KillingIntegrabilityResiduals VerifyKillingIntegrability(
    const MetricCertificate& cert, const AgentModel& model,
    std::span<const Vector> samples, double fd_step = kDefaultFdStep);

/// Seeded points drawn uniformly from the ball of the given radius around
/// `center`.
std::vector<Vector> SampleBall(std::span<const double> center, double radius,
                               std::size_t count, std::uint64_t seed);

}  // namespace edgesync
