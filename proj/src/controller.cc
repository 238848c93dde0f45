#include "edgesync/controller.h"

#include <sstream>

#include "edgesync/error.h"

namespace edgesync {

BetaStar ComputeBetaStar(const GraphMatrices& m, const UpsilonResult& u,
                         double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta_star: rho must be > 0");
  }
  BetaStar out;
  out.w_max = m.weights.max_abs();
  out.lambda_min = UpsilonMargin(m.weights, u.upsilon);
  if (!(out.lambda_min > 0.0)) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "beta_star: W*Upsilon has a non-positive symmetric part");
  }
  out.value = rho * out.w_max / (2.0 * out.lambda_min);
  return out;
}

ControllerConfig MakeControllerConfig(double beta, double beta_star) {
  if (!(beta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be >= 0");
  }
  return {beta, beta_star, beta < beta_star};
}

Vector CouplingInputsFromAlpha(std::span<const double> alpha_values,
                               const WeightedGraph& g, double beta) {
  if (alpha_values.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "CouplingInputs: one alpha value per node expected");
  }
  Vector u(alpha_values.size(), 0.0);
  for (const Edge& e : g.edges()) {
    const double diff = alpha_values[e.l] - alpha_values[e.k];
    u[e.k] += e.w * diff;
    u[e.l] -= e.w * diff;
  }
  for (double& ui : u) ui *= beta;
  return u;
}

Vector CouplingInputs(std::span<const double> states, const WeightedGraph& g,
                      const AgentModel& model, double beta) {
  const std::size_t n = model.state_dim;
  const std::size_t agents = g.num_nodes();
  if (states.size() != agents * n) {
    std::ostringstream os;
    os << "CouplingInputs: stacked state has length " << states.size()
       << ", expected " << agents << "*" << n;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  Vector alpha(agents);
  for (std::size_t i = 0; i < agents; ++i) {
    alpha[i] = model.alpha(states.subspan(i * n, n));
  }
  return CouplingInputsFromAlpha(alpha, g, beta);
}

}  // namespace edgesync
