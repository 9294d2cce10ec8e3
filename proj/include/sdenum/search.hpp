#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>

#include "sdenum/addressable_pq.hpp"
#include "sdenum/graph.hpp"
#include "sdenum/lazy_array.hpp"
#include "sdenum/meter.hpp"
#include "sdenum/types.hpp"

namespace sdenum {

/// A single-source search that can be driven one bounded unit of work at a
/// time. advance() returns the triple completed by that unit, if any.
///
/// Backends also publish their own cost model, which the APSD enumerators
/// turn into per-pull budgets. Any SSSD algorithm that fits this shape can be
/// plugged into the unconstrained enumerator.
template <class S>
concept SearchBackend = requires(S s, const S cs, Vertex v, bool b, std::uint64_t x) {
  { S::kWeighted } -> std::convertible_to<bool>;
  { S::unit_cap(x) } -> std::convertible_to<std::uint64_t>;
  { S::delta_units(x, x) } -> std::convertible_to<std::uint64_t>;
  { S::average_units(x, x, x) } -> std::convertible_to<Rational>;
  s.prepare();
  s.start(v, b);
  { s.advance() } -> std::same_as<std::optional<DistanceTriple>>;
  { cs.done() } -> std::convertible_to<bool>;
  { cs.reached() } -> std::convertible_to<std::uint64_t>;
  { cs.max_degree_seen() } -> std::convertible_to<std::uint64_t>;
};

/// Breadth-first search over lazily initialized memory.
///
/// A vertex's triple is produced once its adjacency list has been scanned,
/// so the output is in BFS order. With `sweep`, unreached vertices follow as
/// infinite-distance triples after the frontier drains.
class BfsSearch {
 public:
  static constexpr bool kWeighted = false;

  /// Steps in the most expensive single unit.
  static constexpr std::uint64_t unit_cap(std::uint64_t /*log_n*/) { return 8; }
  /// Cost of settling a vertex of degree at most delta, in budget units.
  static constexpr std::uint64_t delta_units(std::uint64_t delta, std::uint64_t /*log_n*/) { return delta + 1; }
  /// Average cost per vertex of one complete search: (m + n) / n.
  static Rational average_units(std::uint64_t degree_sum, std::uint64_t n, std::uint64_t /*log_n*/) {
    return Rational(degree_sum + n, std::max<std::uint64_t>(n, 1));
  }

  BfsSearch() = default;
  BfsSearch(const Graph& g, Meter* meter)
      : g_(&g),
        meter_(meter),
        dist_(g.n(), meter),
        frontier_(std::make_unique_for_overwrite<Vertex[]>(std::max<std::size_t>(g.n(), 1))) {
    tick(meter_);
  }

  /// Forgets the previous run in O(1).
  void prepare() {
    dist_.reset();
    state_ = State::kIdle;
    prepared_ = true;
  }

  /// With `sweep`, the infinite-distance sweep covers targets >= sweep_from.
  void start(Vertex s, bool sweep, Vertex sweep_from = 0) {
    if (!prepared_) throw std::logic_error("search started without prepare()");
    if (s >= g_->n()) throw std::out_of_range("source out of range");
    prepared_ = false;
    src_ = s;
    sweep_ = sweep;
    sweep_from_ = sweep_from;
    head_ = tail_ = 0;
    dist_.write(s, 0);
    enter(s, 0);
  }

  std::optional<DistanceTriple> advance() {
    switch (state_) {
      case State::kScan: {
        if (arc_ < cur_deg_) {
          tick(meter_);
          const Vertex u = g_->arc_target(cur_, arc_++);
          if (!dist_.is_written(u)) {
            dist_.write(u, cur_dist_ + 1);
            tick(meter_);
            frontier_[tail_++] = u;
          }
          return std::nullopt;
        }
        const DistanceTriple out{src_, cur_, cur_dist_};
        if (head_ < tail_) {
          tick(meter_);
          const Vertex next = frontier_[head_++];
          enter(next, *dist_.read(next));
        } else {
          finish_finite();
        }
        return out;
      }
      case State::kSweep: {
        tick(meter_);
        const Vertex v = cursor_++;
        const bool unreached = !dist_.is_written(v);
        if (cursor_ == g_->n()) state_ = State::kDone;
        if (unreached) return DistanceTriple{src_, v, kInfinity};
        return std::nullopt;
      }
      case State::kIdle:
      case State::kDone:
        return std::nullopt;
    }
    return std::nullopt;
  }

  bool done() const noexcept { return state_ == State::kDone; }
  bool idle() const noexcept { return state_ == State::kIdle; }
  /// True once every reachable vertex has been produced.
  bool finite_done() const noexcept { return state_ == State::kDone || state_ == State::kSweep; }

  /// Starts the infinite-distance sweep after a run without one.
  void begin_sweep(Vertex from = 0) {
    if (state_ != State::kDone) throw std::logic_error("sweep before the search finished");
    sweep_from_ = from;
    if (reached() < g_->n() && from < g_->n()) {
      state_ = State::kSweep;
      cursor_ = from;
    }
  }

  Vertex source() const noexcept { return src_; }
  std::uint64_t reached() const noexcept { return dist_.written_count(); }
  std::uint64_t max_degree_seen() const noexcept { return max_degree_; }

 private:
  enum class State { kIdle, kScan, kSweep, kDone };

  void enter(Vertex v, Distance d) {
    tick(meter_);
    cur_ = v;
    cur_dist_ = d;
    cur_deg_ = g_->degree(v);
    max_degree_ = std::max<std::uint64_t>(max_degree_, cur_deg_);
    arc_ = 0;
    state_ = State::kScan;
  }

  void finish_finite() {
    if (sweep_ && reached() < g_->n() && sweep_from_ < g_->n()) {
      state_ = State::kSweep;
      cursor_ = sweep_from_;
    } else {
      state_ = State::kDone;
    }
  }

  const Graph* g_ = nullptr;
  Meter* meter_ = nullptr;
  LazyArray<Distance> dist_;
  std::unique_ptr<Vertex[]> frontier_;
  std::uint32_t head_ = 0;
  std::uint32_t tail_ = 0;

  State state_ = State::kIdle;
  bool prepared_ = true;
  bool sweep_ = false;
  Vertex src_ = 0;
  Vertex cur_ = 0;
  Distance cur_dist_ = 0;
  std::uint32_t cur_deg_ = 0;
  std::uint32_t arc_ = 0;
  Vertex cursor_ = 0;
  Vertex sweep_from_ = 0;
  std::uint64_t max_degree_ = 0;
};

/// Dijkstra's algorithm over lazily initialized memory and a binary heap.
///
/// The source's neighbours are bulk-inserted and the heap is then repaired
/// one sift-down per unit, so no unit costs more than O(log n) steps.
class DijkstraSearch {
 public:
  static constexpr bool kWeighted = true;

  static constexpr std::uint64_t unit_cap(std::uint64_t log_n) { return 3 * log_n + 12; }
  static constexpr std::uint64_t delta_units(std::uint64_t delta, std::uint64_t log_n) {
    return delta * (1 + log_n) + log_n + 1;
  }
  /// (m (1 + L) + n (L + 1)) / n with L = ceil(log2 n).
  static Rational average_units(std::uint64_t degree_sum, std::uint64_t n, std::uint64_t log_n) {
    return Rational(degree_sum * (1 + log_n) + n * (log_n + 1), std::max<std::uint64_t>(n, 1));
  }

  DijkstraSearch() = default;
  /// `reserve` pre-sizes the heap; pools of many instances leave it off.
  DijkstraSearch(const Graph& g, Meter* meter, bool reserve = true)
      : g_(&g), meter_(meter), slot_(g.n(), meter), pq_(meter, reserve ? g.n() : 0) {}

  void prepare() {
    slot_.reset();
    pq_.clear();
    settled_ = 0;
    state_ = State::kIdle;
    prepared_ = true;
  }

  void start(Vertex s, bool sweep, Vertex sweep_from = 0) {
    if (!prepared_) throw std::logic_error("search started without prepare()");
    if (s >= g_->n()) throw std::out_of_range("source out of range");
    prepared_ = false;
    src_ = s;
    sweep_ = sweep;
    sweep_from_ = sweep_from;
    bulk_ = true;
    slot_.write(s, kSettled);
    settled_ = 1;
    enter(s, 0);
  }

  std::optional<DistanceTriple> advance() {
    switch (state_) {
      case State::kScan: {
        if (arc_ < cur_deg_) {
          tick(meter_);
          const Vertex u = g_->arc_target(cur_, arc_);
          const Distance nd = add_distance(cur_dist_, g_->arc_weight(cur_, arc_));
          ++arc_;
          const auto h = slot_.read(u);
          if (!h) {
            const auto handle = bulk_ ? pq_.insert_unordered(nd, u) : pq_.insert(nd, u);
            slot_.write(u, handle);
          } else if (*h != kSettled && nd < pq_.key(*h)) {
            pq_.decrease_key(*h, nd);
          }
          return std::nullopt;
        }
        const DistanceTriple out{src_, cur_, cur_dist_};
        bulk_ = false;
        state_ = pq_.ordered() ? State::kExtract : State::kHeapify;
        return out;
      }
      case State::kHeapify:
        if (pq_.heapify_step()) state_ = State::kExtract;
        return std::nullopt;
      case State::kExtract: {
        auto e = pq_.extract_min();
        if (!e) {
          finish_finite();
          return std::nullopt;
        }
        slot_.write(e->payload, kSettled);
        ++settled_;
        enter(e->payload, e->key);
        return std::nullopt;
      }
      case State::kSweep: {
        tick(meter_);
        const Vertex v = cursor_++;
        const bool unreached = !slot_.is_written(v);
        if (cursor_ == g_->n()) state_ = State::kDone;
        if (unreached) return DistanceTriple{src_, v, kInfinity};
        return std::nullopt;
      }
      case State::kIdle:
      case State::kDone:
        return std::nullopt;
    }
    return std::nullopt;
  }

  bool done() const noexcept { return state_ == State::kDone; }
  bool idle() const noexcept { return state_ == State::kIdle; }
  bool finite_done() const noexcept { return state_ == State::kDone || state_ == State::kSweep; }

  /// True between producing a triple and starting work on the next one.
  /// In that state next_key() is exact.
  bool between_settles() const noexcept { return state_ == State::kExtract; }

  /// Distance of the next triple this search will produce, or nullopt when
  /// no reachable vertex is left. Only meaningful when between_settles().
  std::optional<Distance> next_key() {
    tick(meter_);
    return pq_.peek_min_key();
  }

  void begin_sweep(Vertex from = 0) {
    if (state_ != State::kDone) throw std::logic_error("sweep before the search finished");
    sweep_from_ = from;
    if (reached() < g_->n() && from < g_->n()) {
      state_ = State::kSweep;
      cursor_ = from;
    }
  }

  Vertex source() const noexcept { return src_; }
  std::uint64_t reached() const noexcept { return settled_; }
  std::uint64_t max_degree_seen() const noexcept { return max_degree_; }

 private:
  enum class State { kIdle, kScan, kHeapify, kExtract, kSweep, kDone };
  static constexpr std::uint32_t kSettled = 0xFFFFFFFFu;

  void enter(Vertex v, Distance d) {
    tick(meter_);
    cur_ = v;
    cur_dist_ = d;
    cur_deg_ = g_->degree(v);
    max_degree_ = std::max<std::uint64_t>(max_degree_, cur_deg_);
    arc_ = 0;
    state_ = State::kScan;
  }

  void finish_finite() {
    if (sweep_ && reached() < g_->n() && sweep_from_ < g_->n()) {
      state_ = State::kSweep;
      cursor_ = sweep_from_;
    } else {
      state_ = State::kDone;
    }
  }

  const Graph* g_ = nullptr;
  Meter* meter_ = nullptr;
  LazyArray<std::uint32_t> slot_;
  AddressablePQ<Vertex> pq_;
  std::uint64_t settled_ = 0;

  State state_ = State::kIdle;
  bool prepared_ = true;
  bool sweep_ = false;
  bool bulk_ = false;
  Vertex src_ = 0;
  Vertex cur_ = 0;
  Distance cur_dist_ = 0;
  std::uint32_t cur_deg_ = 0;
  std::uint32_t arc_ = 0;
  Vertex cursor_ = 0;
  Vertex sweep_from_ = 0;
  std::uint64_t max_degree_ = 0;
};

static_assert(SearchBackend<BfsSearch>);
static_assert(SearchBackend<DijkstraSearch>);

}  // namespace sdenum
