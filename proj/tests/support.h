#pragma once

// Shared fixtures and independent oracles for the test binaries. Oracles use
// plain loops over the edge list and never call the library routine they
// check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "edgesync/graph.h"
#include "edgesync/models.h"
#include "edgesync/numerics.h"

namespace testing_support {

using edgesync::Edge;
using edgesync::Matrix;
using edgesync::Vector;
using edgesync::WeightedGraph;

inline WeightedGraph PathGraph(int n, double w = 1.0) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return WeightedGraph(n, edges);
}

inline WeightedGraph CycleC3() {
  return WeightedGraph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
}

/// Places `b` after `a` on fresh node indices. A one-node part is an isolated
/// node.
inline WeightedGraph DisjointUnion(int n_a, const std::vector<Edge>& a,
                                   int n_b, const std::vector<Edge>& b) {
  std::vector<Edge> edges = a;
  for (Edge e : b) edges.push_back({e.k + n_a, e.l + n_a, e.w});
  return WeightedGraph::FromUnordered(n_a + n_b, edges);
}

struct SuiteGraph {
  WeightedGraph graph;
  bool connected;
};

/// Seeded random graph with N in [2, 12] and weights in [0.1, 6]. Every third
/// seed (with N >= 3) produces a two-component graph.
inline SuiteGraph SuiteGraphForSeed(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  const int n = std::uniform_int_distribution<int>(2, 12)(rng);
  const double p = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
  const std::uint64_t sub = rng();
  if (seed % 3 == 0 && n >= 3) {
    const int n_a = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const int n_b = n - n_a;
    auto part = [&](int size, std::uint64_t s) {
      return size >= 2
                 ? edgesync::RandomConnectedGraph(size, p, 0.1, 6.0, s).edges()
                 : std::vector<Edge>{};
    };
    return {DisjointUnion(n_a, part(n_a, sub), n_b, part(n_b, sub + 1)),
            false};
  }
  return {edgesync::RandomConnectedGraph(n, p, 0.1, 6.0, sub), true};
}

inline int SuiteConnectedCount(int count) {
  int c = 0;
  for (int s = 0; s < count; ++s) c += SuiteGraphForSeed(s).connected;
  return c;
}

/// L from its entrywise definition: diagonal weighted degree, −w off-diagonal.
inline Matrix LaplacianOracle(const WeightedGraph& g) {
  Matrix l(g.num_nodes(), g.num_nodes());
  for (const Edge& e : g.edges()) {
    l(e.k, e.k) += e.w;
    l(e.l, e.l) += e.w;
    l(e.k, e.l) -= e.w;
    l(e.l, e.k) -= e.w;
  }
  return l;
}

/// (L_e)_{ij} = (column i of E)·(column j of E)·w_j, from shared endpoints.
inline Matrix EdgeLaplacianOracle(const WeightedGraph& g) {
  const auto& edges = g.edges();
  const std::size_t q = edges.size();
  Matrix le(q, q);
  auto sign = [](const Edge& e, int node) {
    return node == e.k ? -1.0 : (node == e.l ? 1.0 : 0.0);
  };
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      double dot = sign(edges[i], edges[j].k) * sign(edges[j], edges[j].k) +
                   sign(edges[i], edges[j].l) * sign(edges[j], edges[j].l);
      le(i, j) = dot * edges[j].w;
    }
  }
  return le;
}

/// Laplacian-form inputs −β Σⱼ ℓᵢⱼ α(xⱼ) for precomputed α values.
inline Vector LaplacianFormInputs(const WeightedGraph& g,
                                  const Vector& alpha_values, double beta) {
  const Matrix l = LaplacianOracle(g);
  Vector u(g.num_nodes(), 0.0);
  for (int i = 0; i < g.num_nodes(); ++i) {
    double s = 0.0;
    for (int j = 0; j < g.num_nodes(); ++j) s += l(i, j) * alpha_values[j];
    u[i] = -beta * s;
  }
  return u;
}

/// xᵀ (L ⊗ P) x for a stacked state.
inline double KronQuadraticForm(const WeightedGraph& g, const Matrix& p,
                                const Vector& x) {
  const Matrix l = LaplacianOracle(g);
  const std::size_t n = p.rows();
  double v = 0.0;
  for (int i = 0; i < g.num_nodes(); ++i) {
    for (int j = 0; j < g.num_nodes(); ++j) {
      if (l(i, j) == 0.0) continue;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          v += l(i, j) * p(a, b) * x[i * n + a] * x[j * n + b];
        }
      }
    }
  }
  return v;
}

/// Central finite-difference Jacobian of a vector field.
inline Matrix FiniteDifferenceJacobian(const edgesync::StateMap& f,
                                       const Vector& x, double h = 1e-6) {
  const std::size_t n = x.size();
  Matrix j(f(x).size(), n);
  for (std::size_t c = 0; c < n; ++c) {
    Vector xp = x;
    Vector xm = x;
    xp[c] += h;
    xm[c] -= h;
    const Vector fp = f(xp);
    const Vector fm = f(xm);
    for (std::size_t r = 0; r < fp.size(); ++r) {
      j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
    }
  }
  return j;
}

inline Vector RandomVector(std::mt19937_64& rng, std::size_t n,
                           double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline Matrix RandomSymmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  }
  return a;
}

/// Routh–Hurwitz test for a real polynomial of degree ≤ 3 given as the
/// characteristic polynomial of an n x n matrix (n ≤ 3).
inline bool HurwitzByRouth(const Matrix& a) {
  const std::size_t n = a.rows();
  const double tr = [&] {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += a(i, i);
    return t;
  }();
  if (n == 1) return a(0, 0) < 0.0;
  if (n == 2) {
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return tr < 0.0 && det > 0.0;
  }
  // s³ + c₂ s² + c₁ s + c₀ with c₂ = −tr, c₁ = sum of principal 2x2 minors,
  // c₀ = −det.
  auto minor = [&](std::size_t i, std::size_t j) {
    return a(i, i) * a(j, j) - a(i, j) * a(j, i);
  };
  const double c2 = -tr;
  const double c1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
  const double det = a(0, 0) * minor(1, 2) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  const double c0 = -det;
  return c2 > 0.0 && c0 > 0.0 && c2 * c1 > c0;
}

}  // namespace testing_support
