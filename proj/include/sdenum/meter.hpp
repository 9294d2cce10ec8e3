#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sdenum {

/// Counts instrumented RAM steps. Monotone; `since_mark()` is the cost of the
/// pull in progress.
class StepCounter {
 public:
  void tick(std::uint64_t k = 1) noexcept { total_ += k; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t last_emit_mark() const noexcept { return last_emit_mark_; }
  std::uint64_t since_mark() const noexcept { return total_ - last_emit_mark_; }
  void mark() noexcept { last_emit_mark_ = total_; }

 private:
  std::uint64_t total_ = 0;
  std::uint64_t last_emit_mark_ = 0;
};

/// Everything an enumerator reports about its own resource use.
struct Meter {
  StepCounter steps;
  std::uint64_t lazy_cells_allocated = 0;

  void tick(std::uint64_t k = 1) noexcept { steps.tick(k); }
};

inline void tick(Meter* m, std::uint64_t k = 1) noexcept {
  if (m != nullptr) m->tick(k);
}

namespace detail {
__extension__ typedef unsigned __int128 U128;
}  // namespace detail

/// Non-negative rational used for exact delay bounds and fitted constants.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d = 1) : num(n), den(d) {  // NOLINT
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
  }

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const noexcept { return num == 0; }

  /// Smallest integer >= c * this.
  std::uint64_t ceil_times(std::uint64_t c) const noexcept {
    const detail::U128 p = static_cast<detail::U128>(num) * c;
    return static_cast<std::uint64_t>((p + den - 1) / den);
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return static_cast<detail::U128>(a.num) * b.den ==
           static_cast<detail::U128>(b.num) * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) noexcept {
    return static_cast<detail::U128>(a.num) * b.den <
           static_cast<detail::U128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) noexcept { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) noexcept { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) noexcept { return !(a < b); }

  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

/// a / b for a step count and a rational base.
inline Rational divide(std::uint64_t a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("zero bound base");
  return Rational(a * b.den, b.num);
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace sdenum
