#pragma once

#include "edgesync/graph.h"
#include "edgesync/numerics.h"

namespace edgesync {

/// Edge matrix Υ with Υ Eᵀ = Eᵀ L and W Υ + Υᵀ W ≻ 0, built as
/// Υ = Eᵀ E W + μ Σᵢ vᵢ vᵢᵀ where {vᵢ} is an orthonormal basis of ker(E).
struct UpsilonResult {
  Matrix upsilon;       // Q x Q
  double mu = 0.0;      // scalar weighting the kernel projector
  Matrix omega;         // Q x N, ½(|Eᵀ| L − Υ |Eᵀ|)
  double pd_margin = 0.0;  // λ_min((WΥ + ΥᵀW) / 2)
  Matrix kernel_basis;  // Q x ℓ
  int kernel_dim = 0;   // ℓ
  double residual = 0.0;  // ‖Υ Eᵀ − Eᵀ L‖_max
};

/// Builds Υ and Ω for any graph, connected or not.
///
/// When ker(E) is trivial, Υ = L_e and μ = 0. Otherwise μ starts at the
/// smallest nonzero Laplacian eigenvalue and walks the schedule
/// μ₀·2^{-1}, μ₀·2^{1}, μ₀·2^{-2}, μ₀·2^{2}, ... up to exponent 40, keeping
/// the first candidate whose margin exceeds 1e-10·‖W‖_max. Throws
/// kMuSearchFailed if none qualifies.
UpsilonResult BuildUpsilon(const GraphMatrices& m);

/// Ω = ½(|Eᵀ| L − Υ |Eᵀ|).
Matrix BuildOmega(const GraphMatrices& m, const Matrix& upsilon);

/// λ_min of the symmetric part of W Υ.
double UpsilonMargin(const Matrix& weights, const Matrix& upsilon);

struct EndpointResiduals {
  double initial = 0.0;   // ‖E_kᵀ L − Υ E_kᵀ − Ω‖_max
  double terminal = 0.0;  // ‖E_lᵀ L − Υ E_lᵀ − Ω‖_max
};

EndpointResiduals VerifyEndpointIdentities(const GraphMatrices& m,
                                           const UpsilonResult& u);

}  // namespace edgesync
