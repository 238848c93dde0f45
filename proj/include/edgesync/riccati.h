#pragma once

#include <vector>

#include "edgesync/metric.h"
#include "edgesync/numerics.h"

namespace edgesync {

/// Result of the linear-case design: P satisfies
///   P A + Aᵀ P − ρ P B Bᵀ P ⪯ −2μ P
/// and the feedback is α(x) = K x with K = Bᵀ P.
struct LinearDesign {
  Matrix a;
  Matrix b;
  double rho = 0.0;
  double mu_target = 0.0;
  MetricCertificate certificate;
  Matrix gain;  // K = Bᵀ P, m x n
  /// Newton iterates P₀, P₁, ... (the last one is certificate.p).
  std::vector<Matrix> iterates;
  /// ‖(A+μI)ᵀP + P(A+μI) − ρ P B Bᵀ P + I‖_max of the returned P.
  double are_residual = 0.0;
};

/// Bass's stabilizing gain: with λ = ‖A‖_F + 1, solve
/// (A + λI) Z + Z (A + λI)ᵀ = 2 B Bᵀ and return K₀ = Bᵀ Z⁺.
///
/// Z⁺ is the pseudo-inverse, so uncontrollable but stable modes are left
/// alone. The gain is accepted only if (A − B K₀)ᵀ Y + Y (A − B K₀) = −I has a
/// positive definite solution; otherwise throws kNotStabilizable.
Matrix BassInitialGain(const Matrix& a, const Matrix& b);

/// Solves the strict Riccati inequality through the shifted equation
///   (A+μI)ᵀ P + P (A+μI) − ρ P B Bᵀ P + I = 0
/// by Newton–Kleinman, seeded with Bass's gain for (A+μI, √ρ B). Stops when
/// successive iterates differ by at most 1e-10·max(1, ‖P‖_max). Throws
/// kNotStabilizable from the seed and kNoConvergence after 100 steps.
LinearDesign SolveAri(const Matrix& a, const Matrix& b, double rho, double mu);

/// λ_min(−[P A + Aᵀ P − ρ P B Bᵀ P + 2μ P]); nonnegative when the inequality
/// holds.
double AriMargin(const Matrix& p, const Matrix& a, const Matrix& b, double rho,
                 double mu);

}  // namespace edgesync
