#include "edgesync/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "edgesync/error.h"

namespace edgesync {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool Unite(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::vector<std::string_view> SplitTokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

WeightedGraph::WeightedGraph(int num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs at least 2 nodes");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    std::ostringstream where;
    where << "edge #" << (i + 1) << " (" << (e.k + 1) << "," << (e.l + 1)
          << ")";
    if (e.k < 0 || e.l >= num_nodes_ || e.k >= e.l) {
      throw Error(ErrorCode::kInvalidArgument,
                  where.str() + ": endpoints must satisfy 1 <= k < l <= N");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::kInvalidArgument,
                  where.str() + ": weight must be positive and finite");
    }
    if (i > 0) {
      const Edge& prev = edges_[i - 1];
      if (std::tie(prev.k, prev.l) == std::tie(e.k, e.l)) {
        throw Error(ErrorCode::kInvalidArgument,
                    where.str() + ": duplicate edge");
      }
      if (std::tie(prev.k, prev.l) > std::tie(e.k, e.l)) {
        throw Error(ErrorCode::kInvalidArgument,
                    where.str() + ": edges not in canonical (k, l) order");
      }
    }
  }
}

WeightedGraph WeightedGraph::FromUnordered(int num_nodes,
                                           std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.k > e.l) std::swap(e.k, e.l);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.k, a.l) < std::tie(b.k, b.l);
  });
  return WeightedGraph(num_nodes, std::move(edges));
}

Vector WeightedGraph::weights() const {
  Vector w;
  w.reserve(edges_.size());
  for (const Edge& e : edges_) w.push_back(e.w);
  return w;
}

std::uint64_t WeightedGraph::Hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* bytes, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  mix(&num_nodes_, sizeof(num_nodes_));
  for (const Edge& e : edges_) {
    mix(&e.k, sizeof(e.k));
    mix(&e.l, sizeof(e.l));
    mix(&e.w, sizeof(e.w));
  }
  return h;
}

GraphMatrices BuildMatrices(const WeightedGraph& g) {
  const std::size_t n = g.num_nodes();
  const std::size_t q = g.num_edges();
  GraphMatrices m;
  m.incidence = Matrix(n, q);
  m.initial = Matrix(n, q);
  m.terminal = Matrix(n, q);
  for (std::size_t j = 0; j < q; ++j) {
    const Edge& e = g.edges()[j];
    m.incidence(e.k, j) = -1.0;
    m.incidence(e.l, j) = 1.0;
    m.initial(e.k, j) = 1.0;
    m.terminal(e.l, j) = 1.0;
  }
  const Vector w = g.weights();
  m.weights = Matrix::Diagonal(w);
  const Matrix et = m.incidence.transpose();
  m.laplacian = m.incidence * m.weights * et;
  m.edge_laplacian = et * m.incidence * m.weights;
  return m;
}

int CountComponents(const WeightedGraph& g) {
  UnionFind uf(g.num_nodes());
  int components = g.num_nodes();
  for (const Edge& e : g.edges()) {
    if (uf.Unite(e.k, e.l)) --components;
  }
  return components;
}

double SmallestNonzeroEigenvalue(std::span<const double> ascending_eigs) {
  if (ascending_eigs.empty()) return 0.0;
  const double threshold = 1e-9 * std::max(1.0, ascending_eigs.back());
  for (double lambda : ascending_eigs) {
    if (lambda > threshold) return lambda;
  }
  return 0.0;
}

SpectralReport ComputeSpectralReport(const GraphMatrices& m,
                                     const WeightedGraph& g) {
  SpectralReport report;
  report.laplacian_eigs = SymEig(m.laplacian).eigenvalues;
  const std::size_t q = m.weights.rows();
  Vector sqrt_w(q);
  for (std::size_t i = 0; i < q; ++i) sqrt_w[i] = std::sqrt(m.weights(i, i));
  const Matrix half = Matrix::Diagonal(sqrt_w);
  const Matrix similar = half * m.incidence.transpose() * m.incidence * half;
  report.edge_laplacian_eigs = SymEig(similar.sym_part()).eigenvalues;
  report.components = CountComponents(g);
  report.lambda2 = report.laplacian_eigs.size() > 1 && report.components == 1
                       ? report.laplacian_eigs[1]
                       : 0.0;
  return report;
}

WeightedGraph RandomConnectedGraph(int n, double edge_probability,
                                   double w_min, double w_max,
                                   std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "RandomConnectedGraph: n must be at least 2");
  }
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "RandomConnectedGraph: probability must lie in [0, 1]");
  }
  if (!(w_min > 0.0 && w_min <= w_max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "RandomConnectedGraph: need 0 < w_min <= w_max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(w_min, w_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  std::set<std::pair<int, int>> present;
  std::vector<Edge> edges;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    present.emplace(a, b);
    edges.push_back({a, b, weight(rng)});
  };
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    add(perm[i], perm[parent(rng)]);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      if (present.count({k, l}) != 0) continue;
      if (coin(rng) < edge_probability) add(k, l);
    }
  }
  return WeightedGraph::FromUnordered(n, std::move(edges));
}

WeightedGraph PermuteNodes(const WeightedGraph& g, std::span<const int> perm) {
  if (perm.size() != static_cast<std::size_t>(g.num_nodes())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "PermuteNodes: permutation length differs from node count");
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.k], perm[e.l], e.w});
  return WeightedGraph::FromUnordered(g.num_nodes(), std::move(edges));
}

WeightedGraph ParseGraphText(std::string_view text, int first_line) {
  int line_no = first_line - 1;
  int nodes = -1;
  std::vector<Edge> edges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = SplitTokens(line);
    if (tokens.empty()) continue;

    if (nodes < 0) {
      if (tokens.size() != 2 || tokens[0] != "nodes" ||
          !ParseNumber(tokens[1], nodes) || nodes < 2) {
        throw ParseError(line_no, "expected `nodes N` with N >= 2");
      }
      continue;
    }
    if (tokens.size() != 3) {
      throw ParseError(line_no, "expected edge line `k l w`");
    }
    int k = 0;
    int l = 0;
    double w = 0.0;
    if (!ParseNumber(tokens[0], k) || !ParseNumber(tokens[1], l) ||
        !ParseNumber(tokens[2], w)) {
      throw ParseError(line_no, "malformed number in edge line");
    }
    if (k < 1 || l > nodes || k >= l) {
      throw ParseError(line_no, "edge endpoints must satisfy 1 <= k < l <= N");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParseError(line_no, "edge weight must be positive and finite");
    }
    if (!edges.empty()) {
      const Edge& prev = edges.back();
      const auto prev_key = std::make_pair(prev.k, prev.l);
      const auto key = std::make_pair(k - 1, l - 1);
      if (key == prev_key) throw ParseError(line_no, "duplicate edge");
      if (key < prev_key) {
        throw ParseError(line_no, "edge out of canonical (k, l) order");
      }
    }
    edges.push_back({k - 1, l - 1, w});
  }
  if (nodes < 0) throw ParseError(line_no, "missing `nodes N` line");
  return WeightedGraph(nodes, std::move(edges));
}

std::string FormatGraphText(const WeightedGraph& g) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "nodes " << g.num_nodes() << "\n";
  for (const Edge& e : g.edges()) {
    os << (e.k + 1) << " " << (e.l + 1) << " " << e.w << "\n";
  }
  return os.str();
}

}  // namespace edgesync
