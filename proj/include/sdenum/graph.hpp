#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdenum/meter.hpp"
#include "sdenum/types.hpp"

namespace sdenum {

/// An input edge as given by the caller. `weight` is ignored for unweighted graphs.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Maximum and average out-degree. The average is kept exact as sum / n.
struct DegreeStats {
  std::uint64_t n = 0;
  std::uint64_t max_degree = 0;
  std::uint64_t degree_sum = 0;

  Rational avg_degree() const { return n == 0 ? Rational(0) : Rational(degree_sum, n); }
};

inline constexpr unsigned kDefaultWeightExponent = 3;

/// n^c, saturating at the largest representable weight.
inline Weight weight_cap(std::uint64_t n, unsigned exponent = kDefaultWeightExponent) noexcept {
  Weight cap = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (n != 0 && cap > (kInfinity - 1) / n) return kInfinity - 1;
    cap *= n;
  }
  return cap;
}

/// Read-only adjacency structure (CSR) with O(1) degree access.
///
/// Undirected graphs store both orientations of every edge; m() still reports
/// the number of undirected edges. The original edge list is kept so the text
/// form round-trips exactly.
class Graph {
 public:
  Graph() = default;

  std::uint32_t n() const noexcept { return n_; }
  std::uint64_t m() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return weighted_; }
  std::uint64_t arc_count() const noexcept { return targets_.size(); }

  std::uint32_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], degree(v)};
  }
  Vertex arc_target(Vertex v, std::uint32_t i) const noexcept { return targets_[offsets_[v] + i]; }
  Weight arc_weight(Vertex v, std::uint32_t i) const noexcept {
    return weighted_ ? weights_[offsets_[v] + i] : Weight{1};
  }

  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const Vertex> targets() const noexcept { return targets_; }
  std::span<const Weight> weights() const noexcept { return weights_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// True when no self-loops and no parallel arcs are stored.
  bool simple() const noexcept { return simple_; }

  /// Uninstrumented O(n) scan, for tests and reports.
  DegreeStats degree_stats() const noexcept {
    DegreeStats s;
    s.n = n_;
    for (Vertex v = 0; v < n_; ++v) {
      s.max_degree = std::max<std::uint64_t>(s.max_degree, degree(v));
      s.degree_sum += degree(v);
    }
    return s;
  }

  friend Graph from_edge_list(std::uint32_t n, std::span<const Edge> edges, bool directed, bool weighted,
                              unsigned weight_exponent);

 private:
  std::uint32_t n_ = 0;
  bool directed_ = true;
  bool weighted_ = false;
  bool simple_ = true;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<Weight> weights_;
  std::vector<Edge> edges_;
};

/// Builds a CSR graph. Arcs of each vertex keep the input order; undirected
/// edges contribute both orientations.
inline Graph from_edge_list(std::uint32_t n, std::span<const Edge> edges, bool directed, bool weighted,
                            unsigned weight_exponent = kDefaultWeightExponent) {
  const Weight cap = weight_cap(n, weight_exponent);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (weighted && e.weight > cap) {
      throw GraphError("weight " + std::to_string(e.weight) + " exceeds n^" + std::to_string(weight_exponent) +
                       " = " + std::to_string(cap));
    }
  }

  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.weighted_ = weighted;
  g.edges_.assign(edges.begin(), edges.end());
  if (!weighted) {
    for (Edge& e : g.edges_) e.weight = 1;
  }

  const std::uint64_t arcs = directed ? edges.size() : 2 * edges.size();
  if (arcs > 0xFFFFFFFFull) throw GraphError("too many arcs");
  g.offsets_.assign(std::size_t{n} + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    if (!directed) ++g.offsets_[e.v + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.targets_.resize(arcs);
  if (weighted) g.weights_.resize(arcs);
  std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  auto put = [&](Vertex a, Vertex b, Weight w) {
    const std::uint32_t at = fill[a]++;
    g.targets_[at] = b;
    if (weighted) g.weights_[at] = w;
  };
  for (const Edge& e : edges) {
    put(e.u, e.v, e.weight);
    if (!directed) put(e.v, e.u, e.weight);
  }

  std::vector<std::uint32_t> last_seen(n, 0xFFFFFFFFu);
  for (Vertex v = 0; v < n && g.simple_; ++v) {
    for (Vertex t : g.neighbors(v)) {
      if (t == v || last_seen.at(t) == v) {
        g.simple_ = false;
        break;
      }
      last_seen.at(t) = v;
    }
  }
  return g;
}

inline Graph from_edge_list(std::uint32_t n, std::initializer_list<Edge> edges, bool directed, bool weighted,
                            unsigned weight_exponent = kDefaultWeightExponent) {
  return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()), directed, weighted,
                        weight_exponent);
}

// ---------------------------------------------------------------------------
// Text format
//
//   n m directed|undirected weighted|unweighted
//   u v [w]        (m lines)
//
// '#' starts a comment that runs to the end of the line.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw GraphError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                     std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

inline Graph parse_graph(std::istream& in, unsigned weight_exponent = kDefaultWeightExponent) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> n, m;
  bool directed = false;
  bool weighted = false;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!n) {
      if (tok.size() != 4) throw GraphError("line " + std::to_string(line_no) + ": header needs 4 fields");
      n = detail::parse_u64(tok[0], line_no);
      m = detail::parse_u64(tok[1], line_no);
      if (tok[2] == "directed") directed = true;
      else if (tok[2] == "undirected") directed = false;
      else throw GraphError("line " + std::to_string(line_no) + ": expected directed|undirected");
      if (tok[3] == "weighted") weighted = true;
      else if (tok[3] == "unweighted") weighted = false;
      else throw GraphError("line " + std::to_string(line_no) + ": expected weighted|unweighted");
      if (*n > 0xFFFFFFFEull) throw GraphError("vertex count too large");
      edges.reserve(*m);
      continue;
    }
    const std::size_t want = weighted ? 3 : 2;
    if (tok.size() != want) {
      throw GraphError("line " + std::to_string(line_no) + ": expected " + std::to_string(want) + " fields");
    }
    Edge e;
    const auto u = detail::parse_u64(tok[0], line_no);
    const auto v = detail::parse_u64(tok[1], line_no);
    if (u >= *n || v >= *n) throw GraphError("line " + std::to_string(line_no) + ": vertex out of range");
    e.u = static_cast<Vertex>(u);
    e.v = static_cast<Vertex>(v);
    e.weight = weighted ? detail::parse_u64(tok[2], line_no) : 1;
    edges.push_back(e);
  }
  if (!n) throw GraphError("missing header line");
  if (edges.size() != *m) {
    throw GraphError("header announces " + std::to_string(*m) + " edges, found " + std::to_string(edges.size()));
  }
  return from_edge_list(static_cast<std::uint32_t>(*n), edges, directed, weighted, weight_exponent);
}

inline Graph parse_graph(std::string_view text, unsigned weight_exponent = kDefaultWeightExponent) {
  std::istringstream in{std::string(text)};
  return parse_graph(in, weight_exponent);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << ' ' << (g.directed() ? "directed" : "undirected") << ' '
      << (g.weighted() ? "weighted" : "unweighted") << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << e.weight;
    out << '\n';
  }
}

inline std::string to_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace sdenum
