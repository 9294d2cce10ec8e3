#pragma once

#include <cstdint>

namespace sdenum::budget {

// Multipliers applied to each variant's budget formula. Chosen so that the
// test corpus never underflows, then frozen.

/// Constant per-pull budget while head-start statistics are gathered.
inline constexpr std::uint64_t kHeadStart = 6;
/// Head-start budget for the no-self pass, which spends 4 steps per vertex.
inline constexpr std::uint64_t kNoSelfHeadStart = 8;

inline constexpr std::uint64_t kSssd = 8;
inline constexpr std::uint64_t kRowwise = 8;
inline constexpr std::uint64_t kUnconstrained = 12;
inline constexpr std::uint64_t kNoSelf = 12;
inline constexpr std::uint64_t kSorted = 24;

}  // namespace sdenum::budget
