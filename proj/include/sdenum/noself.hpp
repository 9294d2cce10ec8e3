#pragma once

#include <algorithm>
#include <array>
#include <string_view>
#include <vector>

#include "sdenum/budget.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/search.hpp"

namespace sdenum {

/// Unweighted all-pairs output without self-distances.
///
/// A first pass over the vertices queues, per vertex, either its edges (all
/// at distance 1) or, when it has no non-loop arc, its infinite fan. Both are
/// expanded on demand when Q runs dry. The pass runs under a constant budget
/// and sums the degrees; afterwards BFS runs from every vertex that had an
/// edge and contributes only distances of 2 and more.
class NoSelfBfsEnumerator final : public Enumerator {
 public:
  explicit NoSelfBfsEnumerator(const Graph& g, OutputMode mode = {.no_self = true})
      : Enumerator(g, mode), sets_{BfsSearch(g, &meter_), BfsSearch(g, &meter_)} {
    sets_[0].prepare();
    starts_.reserve(g.n());
    stats_done_ = g.n() == 0;
    if (g.n() <= 2) {
      while (!stats_done_) head_start_unit();
    }
    finish_preprocessing();
  }

  std::string_view name() const override { return "noself-bfs"; }

  Rational bound_base() const override {
    const std::uint64_t n = std::max<std::uint64_t>(graph().n(), 1);
    return Rational(graph().arc_count() + n, n);
  }

 protected:
  bool machine_done() const override {
    return stats_done_ && next_ >= starts_.size() && (current().idle() || current().done());
  }

  void advance() override {
    if (!stats_done_) {
      head_start_unit();
      return;
    }
    BfsSearch& s = current();
    if (s.idle() || s.done()) {
      start_next();
      return;
    }
    const auto t = s.advance();
    if (t && t->distance >= 2) offer(*t);
  }

  std::uint64_t budget() const override {
    if (!stats_done_) return budget::kNoSelfHeadStart;
    return BfsSearch::average_units(degree_sum_, graph().n(), log_n()).ceil_times(budget::kNoSelf);
  }
  std::uint64_t unit_cap() const override { return BfsSearch::unit_cap(log_n()); }
  Phase phase() const override { return stats_done_ && next_ > 0 ? Phase::kMain : Phase::kHeadStart; }

 private:
  BfsSearch& current() { return sets_[active_]; }
  const BfsSearch& current() const { return sets_[active_]; }

  // Examines one arc of the current vertex (or reads its degree first).
  void head_start_unit() {
    const Vertex v = scanned_;
    const Graph& g = graph();
    meter_.tick();
    if (arc_ == 0 && !degree_read_) {
      degree_sum_ += g.degree(v);
      degree_read_ = true;
      return;
    }
    if (arc_ < g.degree(v)) {
      if (g.arc_target(v, arc_) != v) {
        push_edges(v);
        meter_.tick();
        starts_.push_back(v);
        next_vertex();
      } else {
        ++arc_;
      }
      return;
    }
    push_fan(v);
    next_vertex();
  }

  void next_vertex() {
    ++scanned_;
    arc_ = 0;
    degree_read_ = false;
    if (scanned_ == graph().n()) stats_done_ = true;
  }

  void start_next() {
    meter_.tick();
    if (next_ >= starts_.size()) return;
    if (next_ > 0) active_ ^= 1;
    const Vertex v = starts_[next_++];
    current().start(v, /*sweep=*/true, dedup() ? v + 1 : 0);
    sets_[active_ ^ 1].prepare();
  }

  std::array<BfsSearch, 2> sets_;
  std::size_t active_ = 0;
  std::vector<Vertex> starts_;
  std::size_t next_ = 0;
  Vertex scanned_ = 0;
  std::uint32_t arc_ = 0;
  bool degree_read_ = false;
  bool stats_done_ = false;
  std::uint64_t degree_sum_ = 0;
};

/// Weighted all-pairs output without self-distances.
///
/// Preprocessing bucket-sorts the vertices by degree (stable, so ties keep
/// id order) and sums the degrees. In that order each vertex then yields its
/// lightest non-loop edge, which is a shortest path, or its infinite fan.
/// Dijkstra runs from every vertex with an edge and skips both the source
/// and the target of that edge. Deduplication ranks vertices by this order.
class NoSelfDijkstraEnumerator final : public Enumerator {
 public:
  explicit NoSelfDijkstraEnumerator(const Graph& g, OutputMode mode = {.no_self = true})
      : Enumerator(g, mode), sets_{DijkstraSearch(g, &meter_), DijkstraSearch(g, &meter_)} {
    const std::uint32_t n = g.n();
    // Degrees of n and above share the last bucket; any fixed order works
    // for the head start as long as it is cheap to compute.
    std::vector<std::uint32_t> start(std::size_t{n} + 2, 0);
    for (Vertex v = 0; v < n; ++v) {
      meter_.tick();
      degree_sum_ += g.degree(v);
      ++start[bucket(v) + 1];
    }
    for (std::uint32_t b = 0; b + 1 < start.size(); ++b) {
      meter_.tick();
      start[b + 1] += start[b];
    }
    order_.resize(n);
    rank_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      meter_.tick();
      const std::uint32_t pos = start[bucket(v)]++;
      order_[pos] = v;
      rank_[v] = pos;
    }
    lightest_.resize(n);
    starts_.reserve(n);
    sets_[0].prepare();
    finish_preprocessing();
  }

  std::string_view name() const override { return "noself-dijkstra"; }

  Rational bound_base() const override {
    const std::uint64_t n = std::max<std::uint64_t>(graph().n(), 1);
    return Rational(std::max<std::uint64_t>(graph().arc_count() + n * log_n(), n), n);
  }

  /// Vertices in degree-then-id order.
  const std::vector<Vertex>& order() const noexcept { return order_; }

 protected:
  bool machine_done() const override {
    return pass_done() && next_ >= starts_.size() && (current().idle() || current().done());
  }

  void advance() override {
    if (!pass_done()) {
      pass_unit();
      return;
    }
    DijkstraSearch& s = current();
    if (s.idle() || s.done()) {
      start_next();
      return;
    }
    const auto t = s.advance();
    if (t && t->target != t->source && t->target != lightest_[t->source]) offer(*t);
  }

  std::uint64_t budget() const override {
    return DijkstraSearch::average_units(degree_sum_, graph().n(), log_n()).ceil_times(budget::kNoSelf);
  }
  std::uint64_t unit_cap() const override { return DijkstraSearch::unit_cap(log_n()); }
  Phase phase() const override { return pass_done() && next_ > 0 ? Phase::kMain : Phase::kHeadStart; }
  std::uint32_t rank(Vertex v) const override { return rank_[v]; }
  Vertex at_rank(std::uint32_t r) const override { return order_[r]; }

 private:
  DijkstraSearch& current() { return sets_[active_]; }
  const DijkstraSearch& current() const { return sets_[active_]; }

  std::uint32_t bucket(Vertex v) const { return std::min(graph().degree(v), graph().n()); }
  bool pass_done() const { return pos_ >= graph().n(); }

  // Examines one arc of the current vertex, or closes it.
  void pass_unit() {
    const Graph& g = graph();
    const Vertex s = order_[pos_];
    meter_.tick();
    if (arc_ < g.degree(s)) {
      const Vertex t = g.arc_target(s, arc_);
      const Weight w = g.arc_weight(s, arc_);
      if (t != s && (!found_ || w < best_w_)) {
        found_ = true;
        best_t_ = t;
        best_w_ = w;
      }
      ++arc_;
      return;
    }
    if (found_) {
      lightest_[s] = best_t_;
      push_single({s, best_t_, best_w_});
      starts_.push_back(s);
    } else {
      push_fan(s);
    }
    ++pos_;
    arc_ = 0;
    found_ = false;
  }

  void start_next() {
    meter_.tick();
    if (next_ >= starts_.size()) return;
    if (next_ > 0) active_ ^= 1;
    current().start(starts_[next_++], /*sweep=*/true);
    sets_[active_ ^ 1].prepare();
  }

  std::array<DijkstraSearch, 2> sets_;
  std::vector<Vertex> order_;
  std::vector<std::uint32_t> rank_;
  std::vector<Vertex> lightest_;
  std::vector<Vertex> starts_;
  std::uint64_t degree_sum_ = 0;

  std::uint32_t pos_ = 0;
  std::uint32_t arc_ = 0;
  bool found_ = false;
  Vertex best_t_ = 0;
  Weight best_w_ = 0;

  std::size_t active_ = 0;
  std::size_t next_ = 0;
};

}  // namespace sdenum
