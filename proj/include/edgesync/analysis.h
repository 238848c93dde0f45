#pragma once

#include <span>
#include <string_view>

#include "edgesync/graph.h"
#include "edgesync/numerics.h"
#include "edgesync/trajectory.h"

namespace edgesync {

/// Σ_{i<j} ‖xᵢ − x_j‖₂ over unordered agent pairs of a stacked state.
double SyncError(std::span<const double> states, std::size_t num_agents,
                 std::size_t state_dim);

struct SyncMetrics {
  double sync_error = 0.0;
  double edge_energy = 0.0;  // V = Σᵢ wᵢ eᵢᵀ P eᵢ
  Vector per_edge;           // eᵢᵀ P eᵢ, unweighted, canonical edge order
};

/// Edge energy with eᵢ = x_{lᵢ} − x_{kᵢ}. Throws kNotPositiveDefinite if P is
/// not positive definite and kDimensionMismatch on shape errors.
SyncMetrics EdgeEnergy(std::span<const double> states, const WeightedGraph& g,
                       const Matrix& p);

struct DecayFit {
  double rate = 0.0;       // −slope of log(channel) vs t
  double r_squared = 0.0;
  /// Set when a nonpositive sample forced the window down to its positive
  /// prefix.
  bool clipped = false;
  double t_start = 0.0;    // effective window actually fitted
  double t_end = 0.0;
  std::size_t samples = 0;
};

/// Least-squares fit of log(values) against t over [t_start, t_end]. Throws
/// kEmptyWindow when fewer than two positive samples remain.
DecayFit FitDecayRate(std::span<const double> times,
                      std::span<const double> values, double t_start,
                      double t_end);
DecayFit FitDecayRate(const Trajectory& traj, std::string_view channel,
                      double t_start, double t_end);

struct MonotoneCheck {
  double largest_uptick = 0.0;  // max_k (v_{k+1} − v_k)
  bool passed = true;           // every uptick ≤ tol·max(1, v_k)
};

inline constexpr double kDefaultMonotoneTol = 1e-6;

MonotoneCheck CheckMonotone(std::span<const double> values, double tol);
MonotoneCheck CheckMonotone(const Trajectory& traj, std::string_view channel,
                            double tol = kDefaultMonotoneTol);

}  // namespace edgesync
