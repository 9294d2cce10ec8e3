#pragma once

#include <optional>
#include <string_view>

#include "sdenum/budget.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/search.hpp"

namespace sdenum {

/// Single-source distances from one search. Output is sorted by distance,
/// with infinite distances last unless `reachable_only` drops them.
/// Skipping the self-distance under `no_self` doubles the budget.
template <SearchBackend Search>
class SssdEnumerator final : public Enumerator {
 public:
  SssdEnumerator(const Graph& g, Vertex source, OutputMode mode)
      : Enumerator(g, check_source(g, source, mode)), source_(source), search_(g, &meter_) {
    search_.prepare();
    search_.start(source, !mode.reachable_only);
    finish_preprocessing();
  }

  std::optional<Vertex> source() const override { return source_; }
  std::string_view name() const override { return Search::kWeighted ? "sssd-dijkstra" : "sssd-bfs"; }

  Rational bound_base() const override {
    if constexpr (Search::kWeighted) {
      return Rational(std::max<std::uint64_t>(report_delta() * (1 + log_n()) + log_n(), 1));
    } else {
      return Rational(report_delta() + 1);
    }
  }

 protected:
  bool machine_done() const override { return search_.done(); }

  void advance() override {
    const auto t = search_.advance();
    if (t && !(mode().no_self && t->source == t->target)) offer(*t);
  }

  std::uint64_t budget() const override {
    const std::uint64_t b = budget::kSssd * Search::delta_units(search_.max_degree_seen(), log_n());
    return mode().no_self ? 2 * b : b;
  }
  std::uint64_t unit_cap() const override { return Search::unit_cap(log_n()); }
  bool supports_dedup() const override { return false; }

 private:
  static OutputMode check_source(const Graph& g, Vertex s, OutputMode mode) {
    if (s >= g.n()) {
      throw GraphError("source " + std::to_string(s) + " outside [0, " + std::to_string(g.n()) + ")");
    }
    return mode;
  }

  Vertex source_;
  Search search_;
};

}  // namespace sdenum
