#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "edgesync/graph.h"
#include "edgesync/models.h"
#include "edgesync/numerics.h"
#include "edgesync/trajectory.h"

namespace edgesync {

struct NetworkState {
  double t = 0.0;
  Vector x;  // stacked agent-major, length N·n
};

inline constexpr double kDivergenceThreshold = 1e12;

/// Right-hand side of the closed loop ẋᵢ = f(xᵢ) + g(xᵢ)uᵢ with the coupling
/// evaluated at `x`. Optionally returns the inputs through `inputs_out`.
Vector NetworkVectorField(std::span<const double> x, const WeightedGraph& g,
                          const AgentModel& model, double beta,
                          Vector* inputs_out = nullptr);

/// One classical RK4 step; the coupling is re-evaluated at every stage.
/// Throws DivergedError when a component is non-finite or exceeds 1e12.
NetworkState Rk4Step(const NetworkState& state, double h,
                     const WeightedGraph& g, const AgentModel& model,
                     double beta);

struct SimulationOptions {
  double t_end = 1.0;
  double step = 1e-2;
  double record_interval = 1e-1;
  std::uint64_t seed = 0;  // recorded in metadata only
};

/// Monitor configuration: V is recorded when a metric P is supplied.
struct Monitors {
  std::optional<Matrix> metric;
};

/// Fixed-step RK4 run recording every `record_interval` (which must be an
/// integer multiple of `step` and divide `t_end`). Deterministic.
Trajectory Simulate(const WeightedGraph& g, const AgentModel& model,
                    double beta, std::span<const double> x0,
                    const SimulationOptions& options, const Monitors& monitors);

/// Initial stacked state: `base` for every agent plus an independent seeded
/// perturbation drawn uniformly from the ball of radius `radius`.
Vector PerturbedInitialState(std::span<const double> base,
                             std::size_t num_agents, double radius,
                             std::uint64_t seed);

}  // namespace edgesync
