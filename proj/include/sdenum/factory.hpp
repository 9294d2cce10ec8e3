#pragma once

#include <memory>
#include <optional>
#include <stdexcept>

#include "sdenum/enumerator.hpp"
#include "sdenum/noself.hpp"
#include "sdenum/rowwise.hpp"
#include "sdenum/search.hpp"
#include "sdenum/sorted.hpp"
#include "sdenum/sssd.hpp"
#include "sdenum/unconstrained.hpp"

namespace sdenum {

/// BFS from `source`; the graph must be unweighted.
inline std::unique_ptr<Enumerator> sssd_unweighted(const Graph& g, Vertex source) {
  if (g.weighted()) throw GraphError("sssd_unweighted needs an unweighted graph");
  return std::make_unique<SssdEnumerator<BfsSearch>>(g, source, OutputMode{});
}

/// Dijkstra from `source`. Unweighted graphs are treated as unit-weighted.
inline std::unique_ptr<Enumerator> sssd_weighted(const Graph& g, Vertex source) {
  return std::make_unique<SssdEnumerator<DijkstraSearch>>(g, source, OutputMode{});
}

/// Single-source output honouring `no_self` and `reachable_only`; the
/// output is sorted by distance in any case.
inline std::unique_ptr<Enumerator> sssd_constrained(const Graph& g, Vertex source, OutputMode mode) {
  if (g.weighted()) return std::make_unique<SssdEnumerator<DijkstraSearch>>(g, source, mode);
  return std::make_unique<SssdEnumerator<BfsSearch>>(g, source, mode);
}

/// Row-wise output: one single-source search per vertex, in vertex order.
inline std::unique_ptr<Enumerator> apsd_rowwise(const Graph& g, OutputMode mode = {.row_wise = true}) {
  mode.row_wise = true;
  if (mode.sorted) throw std::invalid_argument("row-wise and sorted output cannot be combined");
  if (g.weighted()) return std::make_unique<RowwiseEnumerator<DijkstraSearch>>(g, mode);
  return std::make_unique<RowwiseEnumerator<BfsSearch>>(g, mode);
}

/// Unconstrained output with any search backend.
template <SearchBackend Search>
std::unique_ptr<Enumerator> apsd_unconstrained_with(const Graph& g) {
  return std::make_unique<UnconstrainedEnumerator<Search>>(g);
}

inline std::unique_ptr<Enumerator> apsd_unconstrained(const Graph& g) {
  if (g.weighted()) return apsd_unconstrained_with<DijkstraSearch>(g);
  return apsd_unconstrained_with<BfsSearch>(g);
}

inline std::unique_ptr<Enumerator> apsd_noself(const Graph& g) {
  if (g.weighted()) return std::make_unique<NoSelfDijkstraEnumerator>(g);
  return std::make_unique<NoSelfBfsEnumerator>(g);
}

/// Finite distances only, optionally without self-distances.
inline std::unique_ptr<Enumerator> apsd_reachable(const Graph& g, bool no_self) {
  return apsd_rowwise(g, OutputMode{.row_wise = true, .no_self = no_self, .reachable_only = true});
}

inline std::unique_ptr<Enumerator> apsd_sorted(const Graph& g, bool reachable_only = false) {
  const OutputMode mode{.reachable_only = reachable_only, .sorted = true};
  if (g.weighted()) return std::make_unique<SortedDijkstraEnumerator>(g, mode);
  return std::make_unique<SortedBfsEnumerator>(g, mode);
}

inline std::unique_ptr<Enumerator> apsd_sorted_noself(const Graph& g, bool reachable_only = false) {
  const OutputMode mode{.no_self = true, .reachable_only = reachable_only, .sorted = true};
  if (g.weighted()) return std::make_unique<SortedDijkstraEnumerator>(g, mode);
  return std::make_unique<SortedBfsEnumerator>(g, mode);
}

/// Picks the variant for an output mode. With a source the result is a
/// single-source enumerator and `row_wise`/`sorted` are implied.
inline std::unique_ptr<Enumerator> make_enumerator(const Graph& g, OutputMode mode,
                                                   std::optional<Vertex> source = std::nullopt) {
  if (!mode.valid()) throw std::invalid_argument("row-wise and sorted output cannot be combined");
  if (source) return sssd_constrained(g, *source, mode);
  if (mode.sorted) return mode.no_self ? apsd_sorted_noself(g, mode.reachable_only) : apsd_sorted(g, mode.reachable_only);
  if (mode.row_wise || mode.reachable_only) return apsd_rowwise(g, mode);
  return mode.no_self ? apsd_noself(g) : apsd_unconstrained(g);
}

/// Restricts an all-pairs enumerator on an undirected graph to one triple
/// per unordered pair. Must be applied before the first pull.
inline std::unique_ptr<Enumerator> dedup_undirected(std::unique_ptr<Enumerator> inner) {
  if (!inner) throw std::invalid_argument("null enumerator");
  inner->enable_dedup();
  return inner;
}

// Enumerators keep a reference to the graph; temporaries would dangle.
std::unique_ptr<Enumerator> sssd_unweighted(const Graph&&, Vertex) = delete;
std::unique_ptr<Enumerator> sssd_weighted(const Graph&&, Vertex) = delete;
std::unique_ptr<Enumerator> sssd_constrained(const Graph&&, Vertex, OutputMode) = delete;
std::unique_ptr<Enumerator> apsd_rowwise(const Graph&&, OutputMode = {}) = delete;
template <SearchBackend Search>
std::unique_ptr<Enumerator> apsd_unconstrained_with(const Graph&&) = delete;
std::unique_ptr<Enumerator> apsd_unconstrained(const Graph&&) = delete;
std::unique_ptr<Enumerator> apsd_noself(const Graph&&) = delete;
std::unique_ptr<Enumerator> apsd_reachable(const Graph&&, bool) = delete;
std::unique_ptr<Enumerator> apsd_sorted(const Graph&&, bool = false) = delete;
std::unique_ptr<Enumerator> apsd_sorted_noself(const Graph&&, bool = false) = delete;
std::unique_ptr<Enumerator> make_enumerator(const Graph&&, OutputMode, std::optional<Vertex> = std::nullopt) = delete;

}  // namespace sdenum
