#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgesync/numerics.h"

namespace edgesync {

struct TrajectoryMetadata {
  std::uint64_t graph_hash = 0;
  std::string model_name;
  double beta = 0.0;
  std::uint64_t seed = 0;
  double step = 0.0;
  double record_interval = 0.0;
};

/// Uniformly sampled closed-loop run. All per-sample vectors share the same
/// length; `states[k]` is the stacked agent-major state at `times[k]`.
struct Trajectory {
  std::size_t num_agents = 0;
  std::size_t state_dim = 0;
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> inputs;
  std::vector<double> energy;      // V channel (NaN when no metric was given)
  std::vector<double> sync_error;  // pairwise distance sum
  TrajectoryMetadata metadata;

  std::size_t size() const { return times.size(); }

  /// Monitor channel by name: "V" or "sync_error". Throws kInvalidArgument
  /// for any other name.
  std::span<const double> channel(std::string_view name) const;
};

/// CSV with header `t,x_1_1,...,x_N_n,u_1,...,u_N,V,sync_error` and 17
/// significant digits per value.
void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out);

}  // namespace edgesync
