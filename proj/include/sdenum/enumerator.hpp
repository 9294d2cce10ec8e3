#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sdenum/graph.hpp"
#include "sdenum/lazy_array.hpp"
#include "sdenum/meter.hpp"
#include "sdenum/types.hpp"

namespace sdenum {

/// Coarse progress marker, used to split delay statistics.
enum class Phase : std::uint8_t {
  kHeadStart,  // trivial solutions while statistics are gathered
  kMain,       // searches running
  kDrain,      // machine finished, queue emptying
};

inline std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::kHeadStart: return "head_start";
    case Phase::kMain: return "main";
    case Phase::kDrain: return "drain";
  }
  return "?";
}

/// A batch of solutions produced on demand at pop time instead of being
/// materialized in the solution queue.
struct RunItem {
  enum class Kind : std::uint8_t {
    kFan,     // (source, t, inf) for every t != source, in rank order
    kEdges,   // (source, t, 1) for every out-arc of source
    kSingle,  // one precomputed triple
  };
  Kind kind = Kind::kSingle;
  Vertex source = 0;
  std::uint32_t cursor = 0;
  DistanceTriple single{};
};

/// Pull-based enumeration with a bounded number of instrumented steps per pull.
///
/// Each pull runs the variant's machine until the pull has used its step
/// budget, then pops one solution. If nothing can be popped while the machine
/// still has work left, the schedule was too tight and ScheduleUnderflow is
/// thrown.
class Enumerator {
 public:
  virtual ~Enumerator() = default;
  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  /// Next triple, or nullopt once the stream is exhausted (idempotent).
  std::optional<DistanceTriple> pull() {
    if (finished_) {
      meter_.tick();
      record(Phase::kDrain, end_of_stream_bound());
      return std::nullopt;
    }
    ++pulls_;
    const std::uint64_t soft = dedup_ ? std::min(effective_budget(), dedup_pace()) : effective_budget();
    while (!queue_full() && meter_.steps.since_mark() < effective_budget()) {
      if (meter_.steps.since_mark() >= soft && q_.size() >= dedup_reserve()) break;
      if (normalize_head()) continue;
      if (machine_done()) {
        // Q is popped first, so moving the head run element there keeps the
        // order and pays ahead for arcs that later runs must skip.
        if (runs_first() || runs_.empty()) break;
        q_.push_back(*pop_run());
        continue;
      }
      advance();
    }
    bank_runs();
    peak_queue_ = std::max(peak_queue_, queue_size());
    const Phase ph = machine_done() ? Phase::kDrain : phase();
    const std::uint64_t bound = effective_budget() + unit_cap() + pop_allowance();
    std::optional<DistanceTriple> out = runs_first() ? pop_run() : pop_solution();
    if (!out) out = runs_first() ? pop_solution() : pop_run();
    if (!out) {
      if (!machine_done()) {
        throw ScheduleUnderflow(std::string(name()) + ": empty queue after " +
                                std::to_string(meter_.steps.since_mark()) + " steps in pull " +
                                std::to_string(pulls_) + " (budget " + std::to_string(effective_budget()) +
                                ", phase " + std::string(to_string(ph)) + ")");
      }
      finished_ = true;
    }
    record(ph, bound);
    return out;
  }

  const Graph& graph() const noexcept { return *g_; }
  OutputMode mode() const noexcept { return mode_; }
  bool dedup() const noexcept { return dedup_; }
  bool exhausted() const noexcept { return finished_; }
  virtual std::optional<Vertex> source() const { return std::nullopt; }
  virtual std::string_view name() const = 0;

  /// Reporting-only bound base for this variant on this graph (not metered).
  virtual Rational bound_base() const = 0;

  const Meter& meter() const noexcept { return meter_; }
  std::uint64_t preprocessing_steps() const noexcept { return preprocessing_steps_; }
  /// Pulls that returned a triple or detected the end for the first time.
  std::uint64_t pulls() const noexcept { return pulls_; }
  std::uint64_t last_pull_steps() const noexcept { return last_steps_; }
  /// Declared step bound of the most recent pull.
  std::uint64_t last_pull_bound() const noexcept { return last_bound_; }
  Phase last_pull_phase() const noexcept { return last_phase_; }
  /// Solutions in Q plus pending on-demand runs.
  std::size_t queue_size() const noexcept { return q_.size() + runs_.size(); }
  std::size_t peak_queue() const noexcept { return peak_queue_; }

  /// Emit each unordered pair once. Only valid on undirected graphs, for
  /// all-pairs variants, and before the first pull.
  void enable_dedup() {
    if (g_->directed()) throw GraphError("deduplication needs an undirected graph");
    if (!supports_dedup()) throw std::invalid_argument(std::string(name()) + " does not support deduplication");
    if (pulls_ > 0 || finished_) throw std::logic_error("deduplication must be enabled before the first pull");
    dedup_ = true;
    if (!g_->simple()) ensure_seen();
  }

 protected:
  static constexpr std::uint64_t kQueueFactor = 4;
  static constexpr std::uint64_t kQueueExtra = 16;

  Enumerator(const Graph& g, OutputMode mode) : g_(&g), mode_(mode) {
    if (!mode.valid()) throw std::invalid_argument("row-wise and sorted output cannot be combined");
    std::uint64_t delta = 0;
    for (Vertex v = 0; v < g.n(); ++v) delta = std::max<std::uint64_t>(delta, g.degree(v));
    report_delta_ = delta;
    log_n_ = ceil_log2(g.n());
  }

  /// Closes the preprocessing window; call at the end of every constructor.
  void finish_preprocessing() {
    preprocessing_steps_ = meter_.steps.total();
    meter_.steps.mark();
  }

  virtual bool machine_done() const = 0;
  /// One unit of machine work (bounded by unit_cap()).
  virtual void advance() = 0;
  /// Machine steps before the pop of the current pull.
  virtual std::uint64_t budget() const = 0;
  virtual std::uint64_t unit_cap() const = 0;
  virtual Phase phase() const { return Phase::kMain; }
  /// Whether the O(n) queue cap applies to this variant.
  virtual bool queue_capped() const { return true; }
  /// Under deduplication, steps after which a pull may stop early if Q is
  /// non-empty. The doubled budget stays the hard limit.
  virtual std::uint64_t dedup_pace() const { return std::numeric_limits<std::uint64_t>::max(); }
  /// Queue length below which a paced pull keeps working.
  virtual std::uint64_t dedup_reserve() const { return 1; }
  /// Pop on-demand runs before Q.
  virtual bool runs_first() const { return false; }
  virtual bool supports_dedup() const { return true; }
  /// Tie-break order for deduplication and fan iteration.
  virtual std::uint32_t rank(Vertex v) const { return v; }
  virtual Vertex at_rank(std::uint32_t r) const { return r; }

  bool accepts(Vertex u, Vertex v) const { return !dedup_ || u == v || rank(u) < rank(v); }

  /// Hands a solution to Q unless deduplication drops it.
  void offer(const DistanceTriple& t) {
    meter_.tick();
    if (accepts(t.source, t.target)) q_.push_back(t);
  }

  void push_fan(Vertex s) {
    meter_.tick();
    RunItem r;
    r.kind = RunItem::Kind::kFan;
    r.source = s;
    r.cursor = dedup_ ? rank(s) + 1 : 0;
    runs_.push_back(r);
  }

  void push_edges(Vertex s) {
    meter_.tick();
    RunItem r;
    r.kind = RunItem::Kind::kEdges;
    r.source = s;
    runs_.push_back(r);
    has_edge_runs_ = true;
    if (!g_->simple()) ensure_seen();
  }

  void push_single(const DistanceTriple& t) {
    meter_.tick();
    if (!accepts(t.source, t.target)) return;
    RunItem r;
    r.kind = RunItem::Kind::kSingle;
    r.single = t;
    runs_.push_back(r);
  }

  std::uint64_t log_n() const noexcept { return log_n_; }
  /// Maximum degree, for declared bounds only.
  std::uint64_t report_delta() const noexcept { return report_delta_; }
  std::size_t pending_solutions() const noexcept { return q_.size(); }
  bool runs_empty() const noexcept { return runs_.empty(); }

  Meter meter_;

 private:
  std::uint64_t effective_budget() const { return dedup_ ? 2 * budget() : budget(); }

  bool queue_full() const {
    if (dedup_ || !queue_capped()) return false;
    return queue_size() >= kQueueFactor * g_->n() + kQueueExtra;
  }

  /// Worst-case pop cost: run heads may need to skip rejected arcs.
  std::uint64_t pop_allowance() const {
    const bool skipping = has_edge_runs_ && (dedup_ || !g_->simple());
    return 4 + (skipping ? 2 * report_delta_ : 0);
  }

  std::uint64_t end_of_stream_bound() const { return 1; }

  /// Spends the pop allowance on moving run elements into Q ahead of
  /// demand, so rejected arcs are skipped a few at a time instead of in one
  /// long pop. Only for variants that pop Q first.
  void bank_runs() {
    if (runs_first() || !(has_edge_runs_ && (dedup_ || !g_->simple()))) return;
    const std::uint64_t stop = meter_.steps.since_mark() + pop_allowance() - 2;
    while (!runs_.empty() && !queue_full() && meter_.steps.since_mark() < stop) {
      if (normalize_head()) continue;
      q_.push_back(*pop_run());
    }
  }

  void record(Phase ph, std::uint64_t bound) {
    last_steps_ = meter_.steps.since_mark();
    last_bound_ = bound;
    last_phase_ = ph;
    meter_.steps.mark();
  }

  void ensure_seen() {
    if (seen_.capacity() == 0 && g_->n() > 0) seen_ = LazyArray<std::uint8_t>(g_->n(), &meter_);
  }

  std::optional<DistanceTriple> pop_solution() {
    if (q_.empty()) return std::nullopt;
    meter_.tick();
    const DistanceTriple t = q_.front();
    q_.pop_front();
    return t;
  }

  /// One step of moving the head run past an element it must not emit, or
  /// of discarding an exhausted run. Returns false if the head is emittable.
  bool normalize_head() {
    if (runs_.empty()) return false;
    RunItem& r = runs_.front();
    switch (r.kind) {
      case RunItem::Kind::kSingle:
        if (accepts(r.single.source, r.single.target)) return false;
        meter_.tick();
        runs_.pop_front();
        return true;
      case RunItem::Kind::kFan: {
        if (r.cursor >= g_->n()) {
          meter_.tick();
          runs_.pop_front();
          return true;
        }
        if (const Vertex t = at_rank(r.cursor); t == r.source || !accepts(r.source, t)) {
          meter_.tick();
          ++r.cursor;
          return true;
        }
        return false;
      }
      case RunItem::Kind::kEdges: {
        if (r.cursor == 0 && seen_.capacity() > 0 && seen_run_ != &r) {
          seen_.reset();
          seen_run_ = &r;
        }
        if (r.cursor >= g_->degree(r.source)) {
          meter_.tick();
          runs_.pop_front();
          seen_run_ = nullptr;
          return true;
        }
        const Vertex t = g_->arc_target(r.source, r.cursor);
        const bool loop = t == r.source;
        const bool repeated = !g_->simple() && !loop && seen_.is_written(t);
        if (loop || repeated || !accepts(r.source, t)) {
          meter_.tick();
          ++r.cursor;
          return true;
        }
        return false;
      }
    }
    return false;
  }

  std::optional<DistanceTriple> pop_run() {
    while (!runs_.empty()) {
      if (normalize_head()) continue;
      meter_.tick();
      RunItem& r = runs_.front();
      DistanceTriple t{};
      switch (r.kind) {
        case RunItem::Kind::kSingle:
          t = r.single;
          runs_.pop_front();
          break;
        case RunItem::Kind::kFan:
          t = {r.source, at_rank(r.cursor), kInfinity};
          ++r.cursor;
          break;
        case RunItem::Kind::kEdges:
          t = {r.source, g_->arc_target(r.source, r.cursor), 1};
          if (!g_->simple()) seen_.write(t.target, 1);
          ++r.cursor;
          break;
      }
      return t;
    }
    return std::nullopt;
  }

  const Graph* g_;
  OutputMode mode_;
  bool dedup_ = false;
  bool finished_ = false;
  bool has_edge_runs_ = false;
  std::deque<DistanceTriple> q_;
  std::deque<RunItem> runs_;
  LazyArray<std::uint8_t> seen_;
  const RunItem* seen_run_ = nullptr;

  std::uint64_t log_n_ = 0;
  std::uint64_t report_delta_ = 0;
  std::uint64_t preprocessing_steps_ = 0;
  std::uint64_t pulls_ = 0;
  std::uint64_t last_steps_ = 0;
  std::uint64_t last_bound_ = 0;
  Phase last_phase_ = Phase::kHeadStart;
  std::size_t peak_queue_ = 0;
};

}  // namespace sdenum
