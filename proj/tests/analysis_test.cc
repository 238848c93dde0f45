#include <cmath>
#include <random>

#include "doctest.h"
#include "edgesync/analysis.h"
#include "edgesync/error.h"
#include "edgesync/graph.h"
#include "support.h"

using namespace edgesync;
using testing_support::KronQuadraticForm;
using testing_support::RandomVector;

namespace {

const Matrix kP{{2.0, 0.5}, {0.5, 1.0}};

}  // namespace

TEST_CASE("sync_error examples") {
  CHECK(SyncError(Vector{1, 2, 1, 2, 1, 2}, 3, 2) == 0.0);
  CHECK(SyncError(Vector{0, 3}, 2, 1) == 3.0);
  CHECK(SyncError(Vector{0, 1, 3}, 3, 1) == 6.0);
  CHECK(SyncError(Vector{0, 0, 3, 4}, 2, 2) == 5.0);
}

TEST_CASE("edge_energy examples") {
  const auto p2 = WeightedGraph(2, {{0, 1, 2.0}});
  const auto r = EdgeEnergy(Vector{0, 1}, p2, Matrix{{1}});
  CHECK(r.edge_energy == 2.0);
  REQUIRE(r.per_edge.size() == 1);
  CHECK(r.per_edge[0] == 1.0);
  const auto same = EdgeEnergy(Vector{1, 2, 1, 2, 1, 2},
                               testing_support::CycleC3(), kP);
  CHECK(same.edge_energy == 0.0);
  for (double v : same.per_edge) CHECK(v == 0.0);
  CHECK_THROWS_AS(EdgeEnergy(Vector{0, 1}, p2, Matrix{{-1}}), Error);
  CHECK_THROWS_AS(EdgeEnergy(Vector{0, 1, 2}, p2, Matrix{{1}}), Error);
}

TEST_CASE("edge energy equals the Kronecker quadratic form") {
  std::mt19937_64 rng(6);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = RandomConnectedGraph(7, 0.4, 0.1, 6.0, seed);
    for (int trial = 0; trial < 4; ++trial) {
      const Vector x = RandomVector(rng, 14, 5.0);
      const double v = EdgeEnergy(x, g, kP).edge_energy;
      const double oracle = KronQuadraticForm(g, kP, x);
      CHECK(std::abs(v - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
    }
  }
}

TEST_CASE("edge energy lower bound and definiteness on connected graphs") {
  std::mt19937_64 rng(7);
  const double p_lower = SymEig(kP).eigenvalues.front();
  const auto g = RandomConnectedGraph(6, 0.3, 0.1, 6.0, 19);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = RandomVector(rng, 12, 5.0);
    const auto r = EdgeEnergy(x, g, kP);
    double bound = 0.0;
    for (const Edge& e : g.edges()) {
      const double d0 = x[2 * e.l] - x[2 * e.k];
      const double d1 = x[2 * e.l + 1] - x[2 * e.k + 1];
      bound += e.w * (d0 * d0 + d1 * d1);
    }
    CHECK(r.edge_energy >= p_lower * bound - 1e-9);
    CHECK(r.edge_energy > 0.0);
    CHECK(r.sync_error > 0.0);
  }
  Vector agree;
  for (int i = 0; i < 6; ++i) agree.insert(agree.end(), {0.3, -1.7});
  const auto r = EdgeEnergy(agree, g, kP);
  CHECK(r.edge_energy == 0.0);
  CHECK(r.sync_error == 0.0);
}

TEST_CASE("edge energy ignores edge orientation") {
  std::mt19937_64 rng(8);
  const auto g = RandomConnectedGraph(5, 0.5, 0.1, 6.0, 2);
  const Vector x = RandomVector(rng, 10, 5.0);
  const auto r = EdgeEnergy(x, g, kP);
  double flipped = 0.0;
  for (const Edge& e : g.edges()) {
    // eᵢ taken as x_k − x_l instead of x_l − x_k.
    const double d0 = x[2 * e.k] - x[2 * e.l];
    const double d1 = x[2 * e.k + 1] - x[2 * e.l + 1];
    flipped += e.w * (kP(0, 0) * d0 * d0 + 2 * kP(0, 1) * d0 * d1 +
                      kP(1, 1) * d1 * d1);
  }
  CHECK(r.edge_energy == doctest::Approx(flipped).epsilon(1e-13));
}

TEST_CASE("fit_decay_rate") {
  Vector t, v, flat;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(0.05 * k);
    v.push_back(5.0 * std::exp(-2.0 * t.back()));
    flat.push_back(3.0);
  }
  const auto fit = FitDecayRate(t, v, 0.0, 5.0);
  CHECK(std::abs(fit.rate - 2.0) <= 1e-9);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(fit.clipped);
  CHECK(fit.samples == 101);

  const auto window = FitDecayRate(t, v, 1.0, 2.0);
  CHECK(window.t_start == doctest::Approx(1.0));
  CHECK(window.t_end == doctest::Approx(2.0));
  CHECK(window.samples == 21);

  const auto constant = FitDecayRate(t, flat, 0.0, 5.0);
  CHECK(std::abs(constant.rate) <= 1e-15);

  Vector clipped = v;
  for (std::size_t k = 60; k < clipped.size(); ++k) clipped[k] = 0.0;
  const auto c = FitDecayRate(t, clipped, 0.0, 5.0);
  CHECK(c.clipped);
  CHECK(c.t_end == doctest::Approx(t[59]));
  CHECK(std::abs(c.rate - 2.0) <= 1e-9);

  Vector dead = v;
  for (std::size_t k = 1; k < dead.size(); ++k) dead[k] = 0.0;
  try {
    FitDecayRate(t, dead, 0.0, 5.0);
    FAIL("expected EmptyWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyWindow);
  }
  CHECK_THROWS_AS(FitDecayRate(t, v, 6.0, 7.0), Error);
}

TEST_CASE("check_monotone") {
  const auto decay = CheckMonotone(Vector{4, 3, 2, 1}, 1e-6);
  CHECK(decay.largest_uptick < 0.0);
  CHECK(decay.passed);
  const auto flat = CheckMonotone(Vector{2, 2, 2}, 1e-6);
  CHECK(flat.largest_uptick == 0.0);
  CHECK(flat.passed);
  const auto bump = CheckMonotone(Vector{4, 3, 3.5, 1}, 1e-6);
  CHECK(bump.largest_uptick == doctest::Approx(0.5));
  CHECK_FALSE(bump.passed);
  // Tolerance is relative to max(1, V_k).
  CHECK(CheckMonotone(Vector{1000, 1000.0005}, 1e-6).passed);
  CHECK_FALSE(CheckMonotone(Vector{1000, 1000.002}, 1e-6).passed);
  CHECK(CheckMonotone(Vector{1e-9, 1.5e-9}, 1e-6).passed);
}

TEST_CASE("trajectory channels") {
  Trajectory traj;
  traj.times = {0, 1, 2};
  traj.energy = {4, 2, 1};
  traj.sync_error = {3, 2, 1};
  CHECK(FitDecayRate(traj, "V", 0, 2).rate == doctest::Approx(std::log(2.0)));
  CHECK(CheckMonotone(traj, "sync_error").passed);
  CHECK_THROWS_AS(traj.channel("energy"), Error);
}
