#pragma once

#include <span>

#include "edgesync/graph.h"
#include "edgesync/models.h"
#include "edgesync/upsilon.h"

namespace edgesync {

struct BetaStar {
  double value = 0.0;      // ρ·w̄ / (2·λ̲)
  double w_max = 0.0;      // w̄, largest edge weight
  double lambda_min = 0.0; // λ̲ = λ_min((WΥ + ΥᵀW)/2)
};

/// Critical coupling gain. λ̲ is taken from the symmetric part of WΥ, which
/// is the quantity bounded in the Lyapunov decrease argument. Throws
/// kNotPositiveDefinite when λ̲ <= 0.
BetaStar ComputeBetaStar(const GraphMatrices& m, const UpsilonResult& u,
                         double rho);

/// Coupling gain plus the critical value it is compared against.
struct ControllerConfig {
  double beta = 0.0;
  double beta_star = 0.0;
  /// True when beta < beta_star, i.e. outside the guaranteed range.
  bool below_critical = false;
};

ControllerConfig MakeControllerConfig(double beta, double beta_star);

/// Distributed diffusive inputs uᵢ = β Σ_{j∈𝒩ᵢ} a_ij (α(x_j) − α(x_i)).
///
/// `states` is the stacked agent-major vector (x₁ then x₂ ...). Each uᵢ only
/// reads α at node i and its neighbours. Throws kDimensionMismatch when the
/// stacked length is not N·n.
Vector CouplingInputs(std::span<const double> states, const WeightedGraph& g,
                      const AgentModel& model, double beta);

/// Same as CouplingInputs with α already evaluated at every agent.
Vector CouplingInputsFromAlpha(std::span<const double> alpha_values,
                               const WeightedGraph& g, double beta);

}  // namespace edgesync
