#pragma once

#include <array>
#include <stdexcept>
#include <string_view>

#include "sdenum/budget.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/search.hpp"

namespace sdenum {

/// All n^2 triples with delay proportional to the average degree.
///
/// The n self-distances come first. While they are produced the average
/// degree is summed up under a constant budget; afterwards every pull gets
/// c * (cost of one search) / n steps. Searches run from every vertex in
/// order, alternating between two sets of lazily initialized memory; the idle
/// set is reset while the other one is in use.
template <SearchBackend Search>
class UnconstrainedEnumerator final : public Enumerator {
 public:
  explicit UnconstrainedEnumerator(const Graph& g, OutputMode mode = {})
      : Enumerator(g, mode), sets_{Search(g, &meter_), Search(g, &meter_)} {
    sets_[0].prepare();
    stats_done_ = g.n() == 0;
    if (g.n() <= 2) {
      while (!stats_done_) head_start_unit();
    }
    finish_preprocessing();
  }

  std::string_view name() const override {
    return Search::kWeighted ? "unconstrained-dijkstra" : "unconstrained-bfs";
  }

  Rational bound_base() const override {
    const std::uint64_t n = std::max<std::uint64_t>(graph().n(), 1);
    const std::uint64_t sum = graph().arc_count();
    if constexpr (Search::kWeighted) {
      return Rational(std::max<std::uint64_t>(sum + n * log_n(), n), n);
    } else {
      return Rational(sum + n, n);
    }
  }

 protected:
  bool machine_done() const override {
    return stats_done_ && next_ >= graph().n() && (current().idle() || current().done());
  }

  void advance() override {
    if (!stats_done_) {
      head_start_unit();
      return;
    }
    Search& s = current();
    if (s.idle() || s.done()) {
      start_next();
      return;
    }
    const auto t = s.advance();
    if (t && t->source != t->target) offer(*t);
  }

  std::uint64_t budget() const override {
    if (!stats_done_) return budget::kHeadStart;
    return Search::average_units(degree_sum_, graph().n(), log_n()).ceil_times(budget::kUnconstrained);
  }
  std::uint64_t unit_cap() const override { return Search::unit_cap(log_n()); }
  Phase phase() const override { return stats_done_ && next_ > 0 ? Phase::kMain : Phase::kHeadStart; }

 private:
  Search& current() { return sets_[active_]; }
  const Search& current() const { return sets_[active_]; }

  // Offers (v, v, 0) and adds deg(v) to the running sum.
  void head_start_unit() {
    const Vertex v = scanned_++;
    offer({v, v, 0});
    meter_.tick();
    degree_sum_ += graph().degree(v);
    if (scanned_ == graph().n()) stats_done_ = true;
  }

  void start_next() {
    meter_.tick();
    if (next_ >= graph().n()) return;
    if (next_ > 0) active_ ^= 1;
    const auto v = static_cast<Vertex>(next_++);
    current().start(v, /*sweep=*/true, dedup() ? v + 1 : 0);
    sets_[active_ ^ 1].prepare();
  }

  std::array<Search, 2> sets_;
  std::size_t active_ = 0;
  std::size_t next_ = 0;
  Vertex scanned_ = 0;
  bool stats_done_ = false;
  std::uint64_t degree_sum_ = 0;
};

}  // namespace sdenum
