#include "edgesync/trajectory.h"

#include <iomanip>
#include <ostream>

#include "edgesync/error.h"

namespace edgesync {

std::span<const double> Trajectory::channel(std::string_view name) const {
  if (name == "V") return energy;
  if (name == "sync_error") return sync_error;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown trajectory channel '" + std::string(name) + "'");
}

void WriteTrajectoryCsv(const Trajectory& traj, std::ostream& out) {
  out << "t";
  for (std::size_t i = 1; i <= traj.num_agents; ++i) {
    for (std::size_t c = 1; c <= traj.state_dim; ++c) {
      out << ",x_" << i << "_" << c;
    }
  }
  for (std::size_t i = 1; i <= traj.num_agents; ++i) out << ",u_" << i;
  out << ",V,sync_error\n";

  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << traj.times[k];
    for (double v : traj.states[k]) out << ',' << v;
    for (double v : traj.inputs[k]) out << ',' << v;
    out << ',' << traj.energy[k] << ',' << traj.sync_error[k] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace edgesync
