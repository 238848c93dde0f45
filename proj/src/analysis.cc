#include "edgesync/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgesync/error.h"

namespace edgesync {

double SyncError(std::span<const double> states, std::size_t num_agents,
                 std::size_t state_dim) {
  if (states.size() != num_agents * state_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "SyncError: stacked length is not N*n");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < num_agents; ++i) {
    for (std::size_t j = i + 1; j < num_agents; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < state_dim; ++c) {
        const double d = states[i * state_dim + c] - states[j * state_dim + c];
        sq += d * d;
      }
      total += std::sqrt(sq);
    }
  }
  return total;
}

SyncMetrics EdgeEnergy(std::span<const double> states, const WeightedGraph& g,
                       const Matrix& p) {
  const std::size_t n = p.rows();
  const std::size_t agents = g.num_nodes();
  if (!p.square() || n == 0 || states.size() != agents * n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "EdgeEnergy: P or stacked state has the wrong size");
  }
  if (!(MinSymEigenvalue(p) > 0.0)) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "EdgeEnergy: P is not positive definite");
  }
  SyncMetrics out;
  out.sync_error = SyncError(states, agents, n);
  out.per_edge.reserve(g.num_edges());
  Vector diff(n);
  for (const Edge& e : g.edges()) {
    for (std::size_t c = 0; c < n; ++c) {
      diff[c] = states[e.l * n + c] - states[e.k * n + c];
    }
    const double vi = Dot(diff, p * diff);
    out.per_edge.push_back(vi);
    out.edge_energy += e.w * vi;
  }
  return out;
}

DecayFit FitDecayRate(std::span<const double> times,
                      std::span<const double> values, double t_start,
                      double t_end) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "FitDecayRate: times and values differ in length");
  }
  DecayFit fit;
  std::vector<double> ts;
  std::vector<double> ys;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < t_start || times[k] > t_end) continue;
    if (!(values[k] > 0.0)) {
      fit.clipped = true;
      break;
    }
    ts.push_back(times[k]);
    ys.push_back(std::log(values[k]));
  }
  if (ts.size() < 2) {
    std::ostringstream os;
    os << "FitDecayRate: fewer than two positive samples in [" << t_start
       << ", " << t_end << "]";
    throw Error(ErrorCode::kEmptyWindow, os.str());
  }
  const double count = static_cast<double>(ts.size());
  double t_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    t_mean += ts[k];
    y_mean += ys[k];
  }
  t_mean /= count;
  y_mean /= count;
  double stt = 0.0;
  double sty = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    stt += (ts[k] - t_mean) * (ts[k] - t_mean);
    sty += (ts[k] - t_mean) * (ys[k] - y_mean);
    syy += (ys[k] - y_mean) * (ys[k] - y_mean);
  }
  const double slope = sty / stt;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double r = ys[k] - (y_mean + slope * (ts[k] - t_mean));
    ss_res += r * r;
  }
  fit.rate = -slope;
  // A flat channel is fitted exactly by a zero slope.
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.t_start = ts.front();
  fit.t_end = ts.back();
  fit.samples = ts.size();
  return fit;
}

DecayFit FitDecayRate(const Trajectory& traj, std::string_view channel,
                      double t_start, double t_end) {
  return FitDecayRate(traj.times, traj.channel(channel), t_start, t_end);
}

MonotoneCheck CheckMonotone(std::span<const double> values, double tol) {
  MonotoneCheck out;
  if (values.size() < 2) return out;
  out.largest_uptick = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double uptick = values[k + 1] - values[k];
    out.largest_uptick = std::max(out.largest_uptick, uptick);
    if (uptick > tol * std::max(1.0, values[k])) out.passed = false;
  }
  return out;
}

MonotoneCheck CheckMonotone(const Trajectory& traj, std::string_view channel,
                            double tol) {
  return CheckMonotone(traj.channel(channel), tol);
}

}  // namespace edgesync
