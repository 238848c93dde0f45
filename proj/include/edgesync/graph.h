#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgesync/numerics.h"

namespace edgesync {

/// Undirected weighted edge between zero-based nodes k < l. The smaller index
/// is the initial node of the oriented edge.
struct Edge {
  int k = 0;
  int l = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Node count plus an edge list in canonical order: sorted by k, then by l,
/// with k < l, no duplicates, and strictly positive finite weights.
class WeightedGraph {
 public:
  /// Validates the canonical-order invariants and throws kInvalidArgument on
  /// any violation.
  WeightedGraph(int num_nodes, std::vector<Edge> edges);

  /// Orients every edge as (min, max), sorts, and then validates. Duplicate
  /// pairs are still rejected.
  static WeightedGraph FromUnordered(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Edge weights in canonical edge order (the diagonal of W).
  Vector weights() const;

  /// Stable FNV-1a digest of the node count and edge list.
  std::uint64_t Hash() const;

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
};

/// Incidence-derived matrices. `initial` holds |negative entries| of the
/// incidence matrix (E_k), `terminal` its positive entries (E_l).
struct GraphMatrices {
  Matrix incidence;       // E, N x Q
  Matrix initial;         // E_k, N x Q
  Matrix terminal;        // E_l, N x Q
  Matrix weights;         // W, Q x Q diagonal
  Matrix laplacian;       // L = E W Eᵀ, N x N
  Matrix edge_laplacian;  // L_e = Eᵀ E W, Q x Q
};

GraphMatrices BuildMatrices(const WeightedGraph& g);

/// Number of connected components (isolated nodes count as components).
int CountComponents(const WeightedGraph& g);

struct SpectralReport {
  Vector laplacian_eigs;       // ascending, length N
  Vector edge_laplacian_eigs;  // ascending, length Q
  double lambda2 = 0.0;        // algebraic connectivity (0 if disconnected)
  int components = 0;
};

/// Spectra of L and L_e. The edge Laplacian is handled through its symmetric
/// similarity transform W^{1/2} Eᵀ E W^{1/2}.
SpectralReport ComputeSpectralReport(const GraphMatrices& m,
                                     const WeightedGraph& g);

/// Smallest Laplacian eigenvalue above the numerical-zero threshold; equals
/// λ₂ on a connected graph. Returns 0 when L has no nonzero eigenvalue.
double SmallestNonzeroEigenvalue(std::span<const double> ascending_eigs);

/// Seeded random connected graph: a spanning tree over a random node
/// permutation plus every remaining pair with probability `edge_probability`.
/// Weights are uniform in [w_min, w_max].
WeightedGraph RandomConnectedGraph(int n, double edge_probability,
                                   double w_min, double w_max,
                                   std::uint64_t seed);

/// Relabels nodes: node i of `g` becomes node perm[i].
WeightedGraph PermuteNodes(const WeightedGraph& g, std::span<const int> perm);

/// Parses the graph text format: a `nodes N` line followed by one `k l w`
/// line per edge (1-based, k < l, canonical order). Blank lines and `#`
/// comments are ignored. `first_line` offsets reported line numbers when the
/// text is embedded in a larger file.
WeightedGraph ParseGraphText(std::string_view text, int first_line = 1);

std::string FormatGraphText(const WeightedGraph& g);

}  // namespace edgesync
