#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/meter.hpp"
#include "sdenum/types.hpp"

namespace sdenum {

/// Per-pull delay statistics of one drained enumeration.
struct DelayReport {
  std::string variant;
  std::uint64_t pulls = 0;
  std::uint64_t max_delay = 0;
  Rational mean_delay{0};
  std::array<std::uint64_t, 3> per_phase_max{};  // indexed by Phase
  std::uint64_t declared_bound_value = 0;        // largest per-pull bound seen
  std::uint64_t bound_violations = 0;            // pulls over their declared bound
  Rational bound_base{1};
  Rational fitted_constant{0};
  std::uint64_t peak_queue = 0;
  std::uint64_t lazy_cells_allocated = 0;
  std::uint64_t preprocessing_steps = 0;
  std::uint64_t total_steps = 0;

  std::uint64_t phase_max(Phase p) const { return per_phase_max[static_cast<std::size_t>(p)]; }

  friend bool operator==(const DelayReport&, const DelayReport&) = default;
};

/// Drains `e`, recording every pull including the one that detects the end.
/// Reads counters only, so the measured step counts are unaffected.
inline std::pair<std::vector<DistanceTriple>, DelayReport> run_metered(Enumerator& e) {
  if (e.pulls() != 0 || e.exhausted()) throw std::logic_error("run_metered needs a fresh enumerator");
  std::vector<DistanceTriple> out;
  DelayReport r;
  r.variant = std::string(e.name());
  std::uint64_t sum = 0;
  for (;;) {
    const auto t = e.pull();
    const std::uint64_t steps = e.last_pull_steps();
    ++r.pulls;
    sum += steps;
    r.max_delay = std::max(r.max_delay, steps);
    auto& ph = r.per_phase_max[static_cast<std::size_t>(e.last_pull_phase())];
    ph = std::max(ph, steps);
    r.declared_bound_value = std::max(r.declared_bound_value, e.last_pull_bound());
    if (steps > e.last_pull_bound()) ++r.bound_violations;
    if (!t) break;
    out.push_back(*t);
  }
  r.mean_delay = Rational(sum, r.pulls);
  r.bound_base = e.bound_base();
  r.fitted_constant = divide(r.max_delay, r.bound_base);
  r.peak_queue = e.peak_queue();
  r.lazy_cells_allocated = e.meter().lazy_cells_allocated;
  r.preprocessing_steps = e.preprocessing_steps();
  r.total_steps = e.meter().steps.total();
  return {std::move(out), std::move(r)};
}

/// Largest max_delay / base over the runs.
inline Rational fit_bound(std::span<const DelayReport> reports, std::span<const Rational> bases) {
  if (reports.empty() || reports.size() != bases.size()) {
    throw std::invalid_argument("fit_bound needs equally many reports and bases, at least one");
  }
  Rational best{0};
  for (std::size_t i = 0; i < reports.size(); ++i) best = std::max(best, divide(reports[i].max_delay, bases[i]));
  return best;
}

inline void write_key_value(std::ostream& os, const DelayReport& r) {
  os << "variant=" << r.variant << '\n'
     << "pulls=" << r.pulls << '\n'
     << "max_delay=" << r.max_delay << '\n'
     << "mean_delay=" << r.mean_delay << '\n';
  for (Phase p : {Phase::kHeadStart, Phase::kMain, Phase::kDrain}) {
    os << "max_delay." << to_string(p) << '=' << r.phase_max(p) << '\n';
  }
  os << "declared_bound_value=" << r.declared_bound_value << '\n'
     << "bound_violations=" << r.bound_violations << '\n'
     << "bound_base=" << r.bound_base << '\n'
     << "fitted_constant=" << r.fitted_constant << '\n'
     << "peak_queue=" << r.peak_queue << '\n'
     << "lazy_cells_allocated=" << r.lazy_cells_allocated << '\n'
     << "preprocessing_steps=" << r.preprocessing_steps << '\n'
     << "total_steps=" << r.total_steps << '\n';
}

inline std::string to_key_value(const DelayReport& r) {
  std::ostringstream os;
  write_key_value(os, r);
  return os.str();
}

inline nlohmann::json to_json(const DelayReport& r) {
  nlohmann::json phases = nlohmann::json::object();
  for (Phase p : {Phase::kHeadStart, Phase::kMain, Phase::kDrain}) phases[std::string(to_string(p))] = r.phase_max(p);
  return {
      {"variant", r.variant},
      {"pulls", r.pulls},
      {"max_delay", r.max_delay},
      {"mean_delay", r.mean_delay.to_double()},
      {"per_phase_max", phases},
      {"declared_bound_value", r.declared_bound_value},
      {"bound_violations", r.bound_violations},
      {"bound_base", r.bound_base.to_double()},
      {"fitted_constant", r.fitted_constant.to_double()},
      {"peak_queue", r.peak_queue},
      {"lazy_cells_allocated", r.lazy_cells_allocated},
      {"preprocessing_steps", r.preprocessing_steps},
      {"total_steps", r.total_steps},
  };
}

}  // namespace sdenum
