#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "sdenum/addressable_pq.hpp"
#include "sdenum/budget.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/search.hpp"

namespace sdenum {

/// Unweighted all-pairs output in globally non-decreasing distance order.
///
/// One persistent BFS per start vertex. The pool is a FIFO: the head search
/// first hands over the solution it is holding back, then runs until it
/// produces its next one. If that one is farther than the distance just
/// handed over, the search goes to the back. Finished searches leave the
/// pool; infinite distances are swept once the pool is empty.
///
/// With self-distances the n triples (v, v, 0) form the head start and the
/// maximum degree is computed alongside them. Without them, O(n)
/// preprocessing splits off the degree-0 vertices, queues every edge as a
/// distance-1 solution, and the degree-0 fans close the stream.
class SortedBfsEnumerator final : public Enumerator {
 public:
  SortedBfsEnumerator(const Graph& g, OutputMode mode) : Enumerator(g, with_sorted(mode)) {
    const std::uint32_t n = g.n();
    instances_.reserve(n);
    if (mode.no_self) {
      for (Vertex v = 0; v < n; ++v) {
        meter_.tick();
        const std::uint32_t deg = g.degree(v);
        delta_ = std::max<std::uint64_t>(delta_, deg);
        if (deg > 0) {
          starts_.push_back(v);
          push_edges(v);
        } else {
          isolated_.push_back(v);
        }
      }
      stage_ = Stage::kInit;
    } else {
      starts_.resize(n);
      for (Vertex v = 0; v < n; ++v) starts_[v] = v;
      stage_ = Stage::kHeadStart;
      normalize_stage();
      if (n <= 2) {
        while (stage_ == Stage::kHeadStart) head_start_unit();
      }
    }
    normalize_stage();
    finish_preprocessing();
  }

  std::string_view name() const override { return mode().no_self ? "sorted-noself-bfs" : "sorted-bfs"; }

  Rational bound_base() const override { return Rational(report_delta() + 1); }

 protected:
  bool machine_done() const override { return stage_ == Stage::kDone; }

  void advance() override {
    switch (stage_) {
      case Stage::kHeadStart: head_start_unit(); break;
      case Stage::kInit: init_unit(); break;
      case Stage::kLoop: loop_unit(); break;
      case Stage::kSweep: sweep_unit(); break;
      case Stage::kFans: fan_unit(); break;
      case Stage::kDone: break;
    }
    normalize_stage();
  }

  std::uint64_t budget() const override {
    if (stage_ == Stage::kHeadStart) return budget::kHeadStart;
    return budget::kSorted * BfsSearch::delta_units(delta_, log_n());
  }
  std::uint64_t unit_cap() const override { return BfsSearch::unit_cap(log_n()) + 8; }
  Phase phase() const override {
    return stage_ == Stage::kHeadStart || stage_ == Stage::kInit ? Phase::kHeadStart : Phase::kMain;
  }
  bool queue_capped() const override { return false; }
  bool runs_first() const override { return true; }

 private:
  enum class Stage { kHeadStart, kInit, kLoop, kSweep, kFans, kDone };

  struct Instance {
    BfsSearch search;
    std::optional<DistanceTriple> held;
  };

  static OutputMode with_sorted(OutputMode m) {
    m.sorted = true;
    return m;
  }

  // Solutions that are already covered elsewhere: the self-distance, and
  // without self-distances also the edges queued during preprocessing.
  bool covered(const DistanceTriple& t) const {
    return t.source == t.target || (mode().no_self && t.distance <= 1);
  }

  void head_start_unit() {
    const Vertex v = scanned_++;
    offer({v, v, 0});
    meter_.tick();
    delta_ = std::max<std::uint64_t>(delta_, graph().degree(v));
    if (scanned_ == graph().n()) stage_ = Stage::kInit;
  }

  // Creates the next search and runs it until it has produced its own
  // self-distance, which is discarded.
  void init_unit() {
    meter_.tick();
    if (!initializing_) {
      instances_.push_back({BfsSearch(graph(), &meter_), std::nullopt});
      Instance& inst = instances_.back();
      inst.search.prepare();
      inst.search.start(starts_[instances_.size() - 1], /*sweep=*/false);
      initializing_ = true;
      return;
    }
    Instance& inst = instances_.back();
    const auto t = inst.search.advance();
    if (t || inst.search.done()) {
      pool_.push_back(static_cast<std::uint32_t>(instances_.size() - 1));
      initializing_ = false;
    }
  }

  void loop_unit() {
    meter_.tick();
    const std::uint32_t id = pool_.front();
    Instance& inst = instances_[id];
    if (!running_) {
      if (inst.held) {
        offer(*inst.held);
        expected_ = inst.held->distance;
        inst.held.reset();
      }
      running_ = true;
      return;
    }
    const auto t = inst.search.advance();
    if (t) {
      if (covered(*t)) return;
      inst.held = *t;
      running_ = false;
      if (t->distance != expected_) {
        pool_.pop_front();
        pool_.push_back(id);
      }
      return;
    }
    if (inst.search.done()) {
      pool_.pop_front();
      running_ = false;
      if (!mode().reachable_only && inst.search.reached() < graph().n()) sweeps_.push_back(id);
    }
  }

  void sweep_unit() {
    meter_.tick();
    BfsSearch& s = instances_[sweeps_[sweep_pos_]].search;
    if (!sweeping_) {
      s.begin_sweep(dedup() ? s.source() + 1 : 0);
      sweeping_ = true;
      return;
    }
    if (const auto t = s.advance()) offer(*t);
    if (s.done()) {
      ++sweep_pos_;
      sweeping_ = false;
    }
  }

  void fan_unit() {
    meter_.tick();
    const Vertex s = isolated_[fan_pos_];
    if (dedup() && fan_target_ <= s) fan_target_ = s + 1;
    if (fan_target_ < graph().n()) {
      const Vertex t = fan_target_++;
      if (t != s) offer({s, t, kInfinity});
    }
    if (fan_target_ >= graph().n()) {
      ++fan_pos_;
      fan_target_ = 0;
    }
  }

  // Moves past stages that have nothing left to do.
  void normalize_stage() {
    for (;;) {
      switch (stage_) {
        case Stage::kHeadStart:
          if (scanned_ < graph().n()) return;
          stage_ = Stage::kInit;
          break;
        case Stage::kInit:
          if (initializing_ || instances_.size() < starts_.size()) return;
          stage_ = Stage::kLoop;
          break;
        case Stage::kLoop:
          if (!pool_.empty()) return;
          stage_ = mode().reachable_only ? Stage::kDone : Stage::kSweep;
          break;
        case Stage::kSweep:
          if (sweep_pos_ < sweeps_.size()) return;
          stage_ = Stage::kFans;
          break;
        case Stage::kFans:
          if (!mode().reachable_only && fan_pos_ < isolated_.size()) return;
          stage_ = Stage::kDone;
          break;
        case Stage::kDone:
          return;
      }
    }
  }

  Stage stage_ = Stage::kHeadStart;
  std::uint64_t delta_ = 0;
  Vertex scanned_ = 0;
  std::vector<Vertex> starts_;
  std::vector<Vertex> isolated_;
  std::vector<Instance> instances_;
  bool initializing_ = false;

  std::deque<std::uint32_t> pool_;
  Distance expected_ = 1;
  bool running_ = false;

  std::vector<std::uint32_t> sweeps_;
  std::size_t sweep_pos_ = 0;
  bool sweeping_ = false;

  std::size_t fan_pos_ = 0;
  Vertex fan_target_ = 0;
};

/// Weighted all-pairs output in globally non-decreasing distance order.
///
/// One persistent Dijkstra per start vertex. A scheduler heap keys every
/// search by the distance of the next triple it will produce, which starts
/// out as the lightest edge at its source; the minimum is advanced by one
/// triple and re-keyed. Without self-distances all searches and the
/// scheduler are built during O(m + n) preprocessing.
class SortedDijkstraEnumerator final : public Enumerator {
 public:
  SortedDijkstraEnumerator(const Graph& g, OutputMode mode)
      : Enumerator(g, with_sorted(mode)), scheduler_(&meter_, g.n()) {
    const std::uint32_t n = g.n();
    instances_.reserve(n);
    if (mode.no_self) {
      bulk_ = true;
      for (Vertex v = 0; v < n; ++v) delta_ = std::max<std::uint64_t>(delta_, g.degree(v));
      meter_.tick(n);
      stage_ = Stage::kInit;
      normalize_stage();
      while (stage_ == Stage::kInit) {
        init_unit();
        normalize_stage();
      }
      scheduler_.heapify();
      bulk_ = false;
    } else {
      stage_ = Stage::kHeadStart;
      normalize_stage();
      if (n <= 2) {
        while (stage_ == Stage::kHeadStart) head_start_unit();
      }
    }
    normalize_stage();
    finish_preprocessing();
  }

  std::string_view name() const override {
    return mode().no_self ? "sorted-noself-dijkstra" : "sorted-dijkstra";
  }

  Rational bound_base() const override {
    return Rational(std::max<std::uint64_t>(report_delta() * (1 + log_n()) + log_n(), 1));
  }

 protected:
  bool machine_done() const override { return stage_ == Stage::kDone; }

  void advance() override {
    switch (stage_) {
      case Stage::kHeadStart: head_start_unit(); break;
      case Stage::kInit: init_unit(); break;
      case Stage::kLoop: loop_unit(); break;
      case Stage::kSweep: sweep_unit(); break;
      case Stage::kDone: break;
    }
    normalize_stage();
  }

  std::uint64_t budget() const override {
    if (stage_ == Stage::kHeadStart) return budget::kHeadStart;
    return budget::kSorted * DijkstraSearch::delta_units(delta_, log_n());
  }
  std::uint64_t unit_cap() const override { return DijkstraSearch::unit_cap(log_n()) + 3 * log_n() + 8; }
  Phase phase() const override {
    return stage_ == Stage::kHeadStart || stage_ == Stage::kInit ? Phase::kHeadStart : Phase::kMain;
  }
  bool queue_capped() const override { return false; }

 private:
  enum class Stage { kHeadStart, kInit, kLoop, kSweep, kDone };

  static OutputMode with_sorted(OutputMode m) {
    m.sorted = true;
    return m;
  }

  void head_start_unit() {
    const Vertex v = scanned_++;
    offer({v, v, 0});
    meter_.tick();
    delta_ = std::max<std::uint64_t>(delta_, graph().degree(v));
    if (scanned_ == graph().n()) stage_ = Stage::kInit;
  }

  // Builds the next search and runs it up to the point where its next key
  // is known; the self-distance it produces on the way is discarded.
  void init_unit() {
    meter_.tick();
    if (!initializing_) {
      const auto v = static_cast<Vertex>(instances_.size());
      instances_.emplace_back(graph(), &meter_, /*reserve=*/false);
      instances_.back().prepare();
      instances_.back().start(v, /*sweep=*/false);
      initializing_ = true;
      self_seen_ = false;
      return;
    }
    DijkstraSearch& s = instances_.back();
    if (!self_seen_) {
      if (s.advance()) self_seen_ = true;
      return;
    }
    if (!s.between_settles() && !s.done()) {
      s.advance();
      return;
    }
    schedule(static_cast<std::uint32_t>(instances_.size() - 1));
    initializing_ = false;
  }

  // Re-keys a search that sits between two settles, or retires it.
  void schedule(std::uint32_t id) {
    DijkstraSearch& s = instances_[id];
    std::optional<Distance> key;
    if (!s.done()) key = s.next_key();
    if (key) {
      if (bulk_) {
        scheduler_.insert_unordered(*key, id);
      } else {
        scheduler_.insert(*key, id);
      }
      return;
    }
    while (!s.done()) s.advance();
    if (!mode().reachable_only && s.reached() < graph().n()) sweeps_.push_back(id);
  }

  void loop_unit() {
    if (!running_) {
      const auto e = scheduler_.extract_min();
      current_ = e->payload;
      running_ = true;
      produced_ = false;
      return;
    }
    DijkstraSearch& s = instances_[current_];
    if (produced_ && (s.between_settles() || s.done())) {
      meter_.tick();
      schedule(current_);
      running_ = false;
      return;
    }
    if (const auto t = s.advance()) {
      produced_ = true;
      if (t->source != t->target) offer(*t);
    }
  }

  void sweep_unit() {
    meter_.tick();
    DijkstraSearch& s = instances_[sweeps_[sweep_pos_]];
    if (!sweeping_) {
      s.begin_sweep(dedup() ? s.source() + 1 : 0);
      sweeping_ = true;
      return;
    }
    if (const auto t = s.advance()) offer(*t);
    if (s.done()) {
      ++sweep_pos_;
      sweeping_ = false;
    }
  }

  void normalize_stage() {
    for (;;) {
      switch (stage_) {
        case Stage::kHeadStart:
          if (scanned_ < graph().n()) return;
          stage_ = Stage::kInit;
          break;
        case Stage::kInit:
          if (initializing_ || instances_.size() < graph().n()) return;
          stage_ = Stage::kLoop;
          break;
        case Stage::kLoop:
          if (running_ || !scheduler_.empty()) return;
          stage_ = mode().reachable_only ? Stage::kDone : Stage::kSweep;
          break;
        case Stage::kSweep:
          if (sweep_pos_ < sweeps_.size()) return;
          stage_ = Stage::kDone;
          break;
        case Stage::kDone:
          return;
      }
    }
  }

  AddressablePQ<std::uint32_t> scheduler_;
  Stage stage_ = Stage::kHeadStart;
  std::uint64_t delta_ = 0;
  Vertex scanned_ = 0;
  std::vector<DijkstraSearch> instances_;
  bool initializing_ = false;
  bool self_seen_ = false;
  bool bulk_ = false;

  std::uint32_t current_ = 0;
  bool running_ = false;
  bool produced_ = false;

  std::vector<std::uint32_t> sweeps_;
  std::size_t sweep_pos_ = 0;
  bool sweeping_ = false;
};

}  // namespace sdenum
