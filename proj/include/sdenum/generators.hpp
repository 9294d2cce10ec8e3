#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <span>
#include <unordered_set>
#include <vector>

#include "sdenum/graph.hpp"

namespace sdenum {

/// Square boolean matrix, row-major.
struct BoolMatrix {
  std::uint32_t d = 0;
  std::vector<std::uint8_t> cells;

  BoolMatrix() = default;
  explicit BoolMatrix(std::uint32_t dim) : d(dim), cells(std::size_t{dim} * dim, 0) {}

  bool at(std::uint32_t i, std::uint32_t j) const { return cells[std::size_t{i} * d + j] != 0; }
  void set(std::uint32_t i, std::uint32_t j, bool v) { cells[std::size_t{i} * d + j] = v ? 1 : 0; }

  static BoolMatrix identity(std::uint32_t dim) {
    BoolMatrix m(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.set(i, i, true);
    return m;
  }

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;
};

/// k-clique on vertices [0, k) where the edge {k-2, k-1} is replaced by a path
/// through k^2 fresh vertices [k, k + k^2). Vertex 0 is the intended source.
inline Graph gen_clique_path(std::uint32_t k) {
  if (k < 3) throw GraphError("clique-path needs k >= 3");
  const std::uint32_t n = k + k * k;
  std::vector<Edge> edges;
  edges.reserve(std::size_t{k} * (k - 1) / 2 + std::size_t{k} * k);
  for (Vertex a = 0; a < k; ++a) {
    for (Vertex b = a + 1; b < k; ++b) {
      if (a == k - 2 && b == k - 1) continue;
      edges.push_back({a, b, 1});
    }
  }
  Vertex prev = k - 2;
  for (Vertex p = k; p < n; ++p) {
    edges.push_back({prev, p, 1});
    prev = p;
  }
  edges.push_back({prev, k - 1, 1});
  return from_edge_list(n, edges, /*directed=*/false, /*weighted=*/false);
}

/// Star with center 0 and spikes 1..n-1; spike i carries weights[i-1].
inline Graph gen_star(std::uint32_t n, std::span<const Weight> weights) {
  if (n < 1) throw GraphError("star needs n >= 1");
  if (weights.size() != n - 1) {
    throw GraphError("star with " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) + " weights");
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Vertex i = 1; i < n; ++i) edges.push_back({0, i, weights[i - 1]});
  return from_edge_list(n, edges, /*directed=*/false, /*weighted=*/true);
}

/// Tripartite graph I=[0,d), J=[d,2d), K=[2d,3d) encoding A and B, padded with
/// 2d^2 isolated vertices. (A*B)[i][k] = 1 iff d(i, 2d+k) = 2.
inline Graph gen_bmm_graph(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.d != b.d) throw GraphError("matrix dimensions differ");
  if (a.d < 1) throw GraphError("matrix dimension must be >= 1");
  const std::uint32_t d = a.d;
  const std::uint32_t n = 2 * d * d + 3 * d;
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      if (a.at(i, j)) edges.push_back({i, d + j, 1});
    }
  }
  for (std::uint32_t j = 0; j < d; ++j) {
    for (std::uint32_t k = 0; k < d; ++k) {
      if (b.at(j, k)) edges.push_back({d + j, 2 * d + k, 1});
    }
  }
  return from_edge_list(n, edges, /*directed=*/false, /*weighted=*/false);
}

/// n-2 isolated vertices followed by a single edge {n-2, n-1}.
inline Graph gen_isolated_plus_edge(std::uint32_t n) {
  if (n < 2) throw GraphError("isolated-edge needs n >= 2");
  const Edge e{n - 2, n - 1, 1};
  return from_edge_list(n, std::span<const Edge>(&e, 1), /*directed=*/false, /*weighted=*/false);
}

namespace detail {

/// Uniform integer in [0, bound) from raw 64-bit output; portable across
/// standard libraries, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

}  // namespace detail

/// Uniform simple graph with exactly m edges (no loops, no parallel edges).
/// Weights are uniform in [0, max_weight] when max_weight > 0; otherwise the
/// graph is unweighted. Deterministic for a given seed.
inline Graph gen_random(std::uint32_t n, std::uint64_t m, bool directed, Weight max_weight, std::uint64_t seed) {
  const std::uint64_t nn = n;
  const std::uint64_t pairs = nn == 0 ? 0 : (directed ? nn * (nn - 1) : nn * (nn - 1) / 2);
  if (m > pairs) {
    throw GraphError("cannot place " + std::to_string(m) + " edges on " + std::to_string(n) + " vertices");
  }
  if (max_weight > 0 && max_weight > weight_cap(n)) {
    throw GraphError("max weight " + std::to_string(max_weight) + " exceeds n^3");
  }
  std::mt19937_64 rng(seed);

  // Floyd's sampling of m distinct pair indices.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    const std::uint64_t t = detail::uniform_below(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> ids(chosen.begin(), chosen.end());
  std::sort(ids.begin(), ids.end());

  std::vector<Edge> edges;
  edges.reserve(m);
  for (const std::uint64_t id : ids) {
    Edge e;
    if (directed) {
      e.u = static_cast<Vertex>(id / (nn - 1));
      const auto r = static_cast<Vertex>(id % (nn - 1));
      e.v = r < e.u ? r : r + 1;
    } else {
      // Row u holds the pairs (u, v) with v > u.
      std::uint64_t u = 0;
      std::uint64_t rest = id;
      while (rest >= nn - 1 - u) {
        rest -= nn - 1 - u;
        ++u;
      }
      e.u = static_cast<Vertex>(u);
      e.v = static_cast<Vertex>(u + 1 + rest);
    }
    edges.push_back(e);
  }
  const bool weighted = max_weight > 0;
  if (weighted) {
    for (Edge& e : edges) e.weight = detail::uniform_below(rng, max_weight + 1);
  }
  return from_edge_list(n, edges, directed, weighted);
}

}  // namespace sdenum
