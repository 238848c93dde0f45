#include "edgesync/simulator.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "edgesync/analysis.h"
#include "edgesync/controller.h"
#include "edgesync/error.h"
#include "edgesync/metric.h"

namespace edgesync {
namespace {

std::size_t IntegerRatio(double numerator, double denominator,
                         const char* what) {
  const double ratio = numerator / denominator;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
    std::ostringstream os;
    os << "Simulate: " << what << " (ratio " << ratio
       << ") is not a positive integer";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  return static_cast<std::size_t>(rounded);
}

void CheckFinite(std::span<const double> x, double t_prev, double t_next) {
  for (double v : x) {
    if (!std::isfinite(v) || std::abs(v) > kDivergenceThreshold) {
      std::ostringstream os;
      os << "state diverged between t=" << t_prev << " and t=" << t_next;
      throw DivergedError(t_prev, os.str());
    }
  }
}

}  // namespace

Vector NetworkVectorField(std::span<const double> x, const WeightedGraph& g,
                          const AgentModel& model, double beta,
                          Vector* inputs_out) {
  const std::size_t n = model.state_dim;
  const std::size_t agents = g.num_nodes();
  Vector u = CouplingInputs(x, g, model, beta);
  Vector dx(x.size());
  for (std::size_t i = 0; i < agents; ++i) {
    const auto xi = x.subspan(i * n, n);
    const Vector f = model.drift(xi);
    const Vector gi = model.input(xi);
    for (std::size_t c = 0; c < n; ++c) dx[i * n + c] = f[c] + gi[c] * u[i];
  }
  if (inputs_out != nullptr) *inputs_out = std::move(u);
  return dx;
}

NetworkState Rk4Step(const NetworkState& state, double h,
                     const WeightedGraph& g, const AgentModel& model,
                     double beta) {
  if (!(h > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Rk4Step: h must be positive");
  }
  const std::size_t len = state.x.size();
  auto axpy = [len](std::span<const double> x, double s,
                    std::span<const double> k) {
    Vector out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = x[i] + s * k[i];
    return out;
  };
  const Vector k1 = NetworkVectorField(state.x, g, model, beta);
  const Vector k2 =
      NetworkVectorField(axpy(state.x, 0.5 * h, k1), g, model, beta);
  const Vector k3 =
      NetworkVectorField(axpy(state.x, 0.5 * h, k2), g, model, beta);
  const Vector k4 = NetworkVectorField(axpy(state.x, h, k3), g, model, beta);

  NetworkState next{state.t + h, Vector(len)};
  for (std::size_t i = 0; i < len; ++i) {
    next.x[i] =
        state.x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  CheckFinite(next.x, state.t, next.t);
  return next;
}

Trajectory Simulate(const WeightedGraph& g, const AgentModel& model,
                    double beta, std::span<const double> x0,
                    const SimulationOptions& options,
                    const Monitors& monitors) {
  const std::size_t n = model.state_dim;
  const std::size_t agents = g.num_nodes();
  if (x0.size() != agents * n) {
    std::ostringstream os;
    os << "Simulate: initial state has length " << x0.size() << ", expected "
       << agents * n;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  if (!(options.t_end > 0.0) || !(options.step > 0.0) ||
      options.step > options.record_interval) {
    throw Error(ErrorCode::kInvalidArgument,
                "Simulate: need t_end > 0 and 0 < step <= record_interval");
  }
  if (monitors.metric && (monitors.metric->rows() != n ||
                          monitors.metric->cols() != n)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Simulate: monitor metric must be n x n");
  }
  const std::size_t steps_per_record =
      IntegerRatio(options.record_interval, options.step, "record_interval/h");
  const std::size_t records =
      IntegerRatio(options.t_end, options.record_interval,
                   "t_end/record_interval");

  Trajectory traj;
  traj.num_agents = agents;
  traj.state_dim = n;
  traj.metadata = {g.Hash(),         model.name,   beta, options.seed,
                   options.step, options.record_interval};

  auto record = [&](std::size_t index, const Vector& x) {
    Vector inputs;
    NetworkVectorField(x, g, model, beta, &inputs);
    traj.times.push_back(static_cast<double>(index) * options.record_interval);
    traj.states.push_back(x);
    traj.inputs.push_back(std::move(inputs));
    if (monitors.metric) {
      const SyncMetrics metrics = EdgeEnergy(x, g, *monitors.metric);
      traj.energy.push_back(metrics.edge_energy);
      traj.sync_error.push_back(metrics.sync_error);
    } else {
      traj.energy.push_back(std::numeric_limits<double>::quiet_NaN());
      traj.sync_error.push_back(SyncError(x, agents, n));
    }
  };

  NetworkState state{0.0, Vector(x0.begin(), x0.end())};
  CheckFinite(state.x, 0.0, 0.0);
  record(0, state.x);
  for (std::size_t r = 1; r <= records; ++r) {
    for (std::size_t s = 0; s < steps_per_record; ++s) {
      state = Rk4Step(state, options.step, g, model, beta);
    }
    record(r, state.x);
  }
  return traj;
}

Vector PerturbedInitialState(std::span<const double> base,
                             std::size_t num_agents, double radius,
                             std::uint64_t seed) {
  const auto offsets =
      SampleBall(Vector(base.size(), 0.0), radius, num_agents, seed);
  Vector x;
  x.reserve(num_agents * base.size());
  for (const Vector& offset : offsets) {
    for (std::size_t c = 0; c < base.size(); ++c) {
      x.push_back(base[c] + offset[c]);
    }
  }
  return x;
}

}  // namespace edgesync
