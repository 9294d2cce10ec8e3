#pragma once

#include <string_view>
#include <vector>

#include "sdenum/budget.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/search.hpp"

namespace sdenum {

/// One single-source search per start vertex, in vertex order.
///
/// Serves row-wise output and reachable output (which is row-wise anyway).
/// The budget follows the largest degree seen so far. With both `no_self`
/// and `reachable_only`, vertices without a non-loop arc have no output at
/// all, so an O(n) preprocessing pass collects the ones that do.
template <SearchBackend Search>
class RowwiseEnumerator final : public Enumerator {
 public:
  RowwiseEnumerator(const Graph& g, OutputMode mode) : Enumerator(g, mode), search_(g, &meter_) {
    filtered_ = mode.no_self && mode.reachable_only;
    if (filtered_) {
      starts_.reserve(g.n());
      for (Vertex v = 0; v < g.n(); ++v) {
        meter_.tick();
        for (std::uint32_t i = 0; i < g.degree(v); ++i) {
          meter_.tick();
          if (g.arc_target(v, i) != v) {
            starts_.push_back(v);
            break;
          }
        }
      }
    }
    start_next();
    finish_preprocessing();
  }

  std::string_view name() const override {
    return Search::kWeighted ? "rowwise-dijkstra" : "rowwise-bfs";
  }

  Rational bound_base() const override {
    if constexpr (Search::kWeighted) {
      return Rational(std::max<std::uint64_t>(report_delta() * (1 + log_n()) + log_n(), 1));
    } else {
      return Rational(report_delta() + 1);
    }
  }

 protected:
  bool machine_done() const override { return exhausted_starts() && (search_.idle() || search_.done()); }

  void advance() override {
    if (search_.done()) {
      start_next();
      return;
    }
    const auto t = search_.advance();
    if (t && !(mode().no_self && t->source == t->target)) offer(*t);
  }

  std::uint64_t budget() const override {
    const std::uint64_t b = budget::kRowwise * Search::delta_units(search_.max_degree_seen(), log_n());
    return mode().no_self ? 2 * b : b;
  }
  std::uint64_t unit_cap() const override { return Search::unit_cap(log_n()); }

  /// Spreads the remaining search work over the pulls still guaranteed.
  /// Late rows reject most of what they reach, so the budget alone would
  /// front-load work far beyond what the queue needs.
  std::uint64_t dedup_pace() const override {
    if (mode().reachable_only) return Enumerator::dedup_pace();
    const std::uint64_t row_cost = estimated_row_cost();
    const std::uint64_t spent = meter_.steps.total() - row_start_steps_;
    const std::uint64_t current = row_cost > spent ? row_cost - spent : 0;
    const std::uint64_t k = graph().n() - next_;
    const std::uint64_t future_outputs = k * (k + 1) / 2 - (mode().no_self ? k : 0);
    const std::uint64_t pulls = std::max<std::uint64_t>(pending_solutions() + future_outputs, 1);
    return (k * row_cost + current + pulls - 1) / pulls;
  }

  /// Enough triples to cover two rows that emit nothing.
  std::uint64_t dedup_reserve() const override {
    const std::uint64_t hard = 2 * budget();
    return 2 * ((estimated_row_cost() + hard - 1) / hard) + 1;
  }

 private:
  std::size_t start_count() const { return filtered_ ? starts_.size() : graph().n(); }
  bool exhausted_starts() const { return next_ >= start_count(); }

  void start_next() {
    meter_.tick();
    row_start_steps_ = meter_.steps.total();
    if (next_ == 1) first_row_steps_ = row_start_steps_;
    if (exhausted_starts()) return;
    const Vertex s = filtered_ ? starts_[next_] : static_cast<Vertex>(next_);
    ++next_;
    search_.prepare();
    search_.start(s, !mode().reachable_only, dedup() ? s + 1 : 0);
  }

  /// Mean steps per completed row, or a static bound before the first.
  std::uint64_t estimated_row_cost() const {
    const std::uint64_t rows_done = next_ > 0 ? next_ - 1 : 0;
    if (rows_done == 0) return search_cost_bound();
    return (row_start_steps_ - first_row_steps_) / rows_done + 1;
  }

  /// Steps of one full search, before any row has been measured.
  std::uint64_t search_cost_bound() const {
    const Rational per_vertex = Search::average_units(graph().arc_count(), graph().n(), log_n());
    return kStepsPerUnit * (per_vertex.ceil_times(graph().n()) + 1);
  }

  static constexpr std::uint64_t kStepsPerUnit = 8;

  Search search_;
  bool filtered_ = false;
  std::uint64_t row_start_steps_ = 0;
  std::uint64_t first_row_steps_ = 0;
  std::vector<Vertex> starts_;
  std::size_t next_ = 0;
};

}  // namespace sdenum
