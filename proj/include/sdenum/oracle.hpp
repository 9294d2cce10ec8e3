#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdenum/factory.hpp"
#include "sdenum/generators.hpp"
#include "sdenum/graph.hpp"
#include "sdenum/types.hpp"

namespace sdenum {

/// Dense n x n distance table; kInfinity marks unreachable pairs.
struct DistanceMatrix {
  std::uint32_t n = 0;
  std::vector<Distance> entries;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::uint32_t size) : n(size), entries(std::size_t{size} * size, kInfinity) {}

  Distance at(Vertex u, Vertex v) const { return entries[std::size_t{u} * n + v]; }
  Distance& at(Vertex u, Vertex v) { return entries[std::size_t{u} * n + v]; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;
};

/// One Dijkstra run per source (plain binary heap with lazy deletion).
inline DistanceMatrix brute_force_matrix(const Graph& g) {
  DistanceMatrix dm(g.n());
  using Item = std::pair<Distance, Vertex>;
  for (Vertex s = 0; s < g.n(); ++s) {
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dm.at(s, s) = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d != dm.at(s, u)) continue;
      for (std::uint32_t i = 0; i < g.degree(u); ++i) {
        const Vertex v = g.arc_target(u, i);
        const Distance nd = add_distance(d, g.arc_weight(u, i));
        if (nd < dm.at(s, v)) {
          dm.at(s, v) = nd;
          pq.push({nd, v});
        }
      }
    }
  }
  return dm;
}

/// Floyd-Warshall. Infinite entries never take part in an addition.
inline DistanceMatrix relaxation_matrix(const Graph& g) {
  const std::uint32_t n = g.n();
  DistanceMatrix dm(n);
  for (Vertex v = 0; v < n; ++v) dm.at(v, v) = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (std::uint32_t i = 0; i < g.degree(u); ++i) {
      Distance& cell = dm.at(u, g.arc_target(u, i));
      cell = std::min<Distance>(cell, g.arc_weight(u, i));
    }
  }
  for (Vertex w = 0; w < n; ++w) {
    for (Vertex u = 0; u < n; ++u) {
      const Distance uw = dm.at(u, w);
      if (is_infinite(uw)) continue;
      for (Vertex v = 0; v < n; ++v) {
        const Distance wv = dm.at(w, v);
        if (is_infinite(wv)) continue;
        if (uw + wv < dm.at(u, v)) dm.at(u, v) = uw + wv;
      }
    }
  }
  return dm;
}

struct Violation {
  enum class Kind { kMissing, kUnexpected, kWrongDistance, kDuplicate, kOrder, kOutOfRange };
  Kind kind;
  Vertex u = 0;
  Vertex v = 0;
  std::string reason;

  std::string to_string() const {
    return "violation(" + std::string(kind_name(kind)) + ") at pair (" + std::to_string(u) + ", " +
           std::to_string(v) + "): " + reason;
  }

  static std::string_view kind_name(Kind k) {
    switch (k) {
      case Kind::kMissing: return "missing pair";
      case Kind::kUnexpected: return "unexpected pair";
      case Kind::kWrongDistance: return "wrong distance";
      case Kind::kDuplicate: return "duplicate";
      case Kind::kOrder: return "order";
      case Kind::kOutOfRange: return "out of range";
    }
    return "?";
  }
};

/// nullopt when `triples` is exactly the stream `mode` asks for.
///
/// With `source`, only that row is expected. With `dedup`, each unordered
/// pair must appear once in either orientation (the matrix must be symmetric).
inline std::optional<Violation> validate(std::span<const DistanceTriple> triples, const DistanceMatrix& dm,
                                         OutputMode mode, bool dedup = false,
                                         std::optional<Vertex> source = std::nullopt) {
  using K = Violation::Kind;
  const std::uint32_t n = dm.n;
  auto expected = [&](Vertex u, Vertex v) {
    if (source && u != *source) return false;
    if (mode.no_self && u == v) return false;
    if (mode.reachable_only && is_infinite(dm.at(u, v))) return false;
    if (dedup && u > v) return false;
    return true;
  };
  std::vector<std::uint8_t> seen(std::size_t{n} * n, 0);
  const DistanceTriple* prev = nullptr;
  for (const DistanceTriple& t : triples) {
    if (t.source >= n || t.target >= n) return Violation{K::kOutOfRange, t.source, t.target, "vertex out of range"};
    if (t.distance != dm.at(t.source, t.target)) {
      return Violation{K::kWrongDistance, t.source, t.target,
                       "got " + distance_to_string(t.distance) + ", expected " +
                           distance_to_string(dm.at(t.source, t.target))};
    }
    Vertex a = t.source;
    Vertex b = t.target;
    if (dedup && a > b) std::swap(a, b);
    if (!expected(a, b)) return Violation{K::kUnexpected, t.source, t.target, "not part of this output type"};
    auto& cell = seen[std::size_t{a} * n + b];
    if (cell != 0) return Violation{K::kDuplicate, t.source, t.target, "emitted twice"};
    cell = 1;
    if (prev != nullptr) {
      if (mode.sorted && t.distance < prev->distance) {
        return Violation{K::kOrder, t.source, t.target,
                         "distance " + distance_to_string(t.distance) + " after " + distance_to_string(prev->distance)};
      }
      if (mode.row_wise && t.source < prev->source) {
        return Violation{K::kOrder, t.source, t.target,
                         "source " + std::to_string(t.source) + " after " + std::to_string(prev->source)};
      }
      if (mode.row_wise && t.source == prev->source && t.distance < prev->distance) {
        return Violation{K::kOrder, t.source, t.target,
                         "row distance " + distance_to_string(t.distance) + " after " +
                             distance_to_string(prev->distance)};
      }
    }
    prev = &t;
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (expected(u, v) && seen[std::size_t{u} * n + v] == 0) {
        return Violation{K::kMissing, u, v, "expected distance " + distance_to_string(dm.at(u, v))};
      }
    }
  }
  return std::nullopt;
}

/// Reads `d` followed by d rows of d characters '0'/'1'.
inline BoolMatrix read_bool_matrix(std::istream& in) {
  std::uint64_t d = 0;
  if (!(in >> d)) throw GraphError("matrix: missing dimension");
  if (d > 1u << 15) throw GraphError("matrix: dimension too large");
  BoolMatrix m(static_cast<std::uint32_t>(d));
  for (std::uint32_t i = 0; i < d; ++i) {
    std::string row;
    if (!(in >> row)) throw GraphError("matrix: missing row " + std::to_string(i));
    if (row.size() != d) throw GraphError("matrix: row " + std::to_string(i) + " has wrong length");
    for (std::uint32_t j = 0; j < d; ++j) {
      if (row[j] != '0' && row[j] != '1') throw GraphError("matrix: bad character in row " + std::to_string(i));
      m.set(i, j, row[j] == '1');
    }
  }
  std::string extra;
  if (in >> extra) throw GraphError("matrix: trailing data");
  return m;
}

inline BoolMatrix parse_bool_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_bool_matrix(in);
}

inline void write_bool_matrix(std::ostream& out, const BoolMatrix& m) {
  out << m.d << '\n';
  for (std::uint32_t i = 0; i < m.d; ++i) {
    for (std::uint32_t j = 0; j < m.d; ++j) out << (m.at(i, j) ? '1' : '0');
    out << '\n';
  }
}

inline BoolMatrix direct_product(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.d != b.d) throw GraphError("matrix dimensions differ");
  BoolMatrix c(a.d);
  for (std::uint32_t i = 0; i < a.d; ++i) {
    for (std::uint32_t j = 0; j < a.d; ++j) {
      if (!a.at(i, j)) continue;
      for (std::uint32_t k = 0; k < a.d; ++k) {
        if (b.at(j, k)) c.set(i, k, true);
      }
    }
  }
  return c;
}

/// Boolean product read off the distance-2 pairs of the reduction graph.
inline BoolMatrix bmm_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.d != b.d) throw GraphError("matrix dimensions differ");
  const std::uint32_t d = a.d;
  BoolMatrix c(d);
  if (d == 0) return c;
  const Graph g = gen_bmm_graph(a, b);
  auto e = apsd_reachable(g, /*no_self=*/true);
  while (auto t = e->pull()) {
    if (t->source < d && t->target >= 2 * d && t->target < 3 * d && t->distance == 2) {
      c.set(t->source, t->target - 2 * d, true);
    }
  }
  return c;
}

}  // namespace sdenum
