#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sdenum {

using Vertex = std::uint32_t;
using Weight = std::uint64_t;
using Distance = std::uint64_t;

/// Distance of an unreachable target. Never produced by adding finite weights.
inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();

inline bool is_infinite(Distance d) noexcept { return d == kInfinity; }

/// Saturating addition; kInfinity absorbs.
inline Distance add_distance(Distance a, Weight w) noexcept {
  if (is_infinite(a) || w >= kInfinity - a) return kInfinity;
  return a + w;
}

/// One enumerated solution (source, target, d(source, target)).
struct DistanceTriple {
  Vertex source = 0;
  Vertex target = 0;
  Distance distance = 0;

  friend bool operator==(const DistanceTriple&, const DistanceTriple&) = default;
  friend auto operator<=>(const DistanceTriple&, const DistanceTriple&) = default;
};

inline std::string distance_to_string(Distance d) {
  return is_infinite(d) ? std::string("inf") : std::to_string(d);
}

inline std::ostream& operator<<(std::ostream& os, const DistanceTriple& t) {
  return os << t.source << ' ' << t.target << ' ' << distance_to_string(t.distance);
}

/// Output restrictions. `row_wise` and `sorted` are mutually exclusive.
struct OutputMode {
  bool row_wise = false;
  bool no_self = false;
  bool reachable_only = false;
  bool sorted = false;

  bool valid() const noexcept { return !(row_wise && sorted); }
  std::string to_string() const {
    std::string s;
    auto add = [&](bool f, const char* name) {
      if (!f) return;
      if (!s.empty()) s += '+';
      s += name;
    };
    add(row_wise, "row-wise");
    add(no_self, "no-self");
    add(reachable_only, "reachable");
    add(sorted, "sorted");
    return s.empty() ? std::string("unconstrained") : s;
  }
  friend bool operator==(const OutputMode&, const OutputMode&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an enumerator's budget expires with nothing to emit. Indicates a
/// broken credit schedule; must not happen on valid input.
class ScheduleUnderflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// ceil(log2(n)) with ceil_log2(0) = ceil_log2(1) = 0.
inline constexpr std::uint64_t ceil_log2(std::uint64_t n) noexcept {
  std::uint64_t l = 0;
  while ((std::uint64_t{1} << l) < n) ++l;
  return l;
}

}  // namespace sdenum
