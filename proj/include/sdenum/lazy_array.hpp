#pragma once

#include <cstdint>
#include <cstdlib>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>

#include "sdenum/meter.hpp"

// Tests build with SDENUM_LAZY_GARBAGE so that the index array starts with
// pseudorandom content instead of the zero pages most allocators hand out.
#ifndef SDENUM_LAZY_GARBAGE
#define SDENUM_LAZY_GARBAGE 0
#endif

namespace sdenum {

namespace detail {

struct FreeDeleter {
  void operator()(void* p) const noexcept { std::free(p); }
};

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t next_garbage_seed() noexcept {
  static std::uint64_t seed = 0x5DEECE66DULL;
  return splitmix64(seed);
}

}  // namespace detail

/// Array with O(1) allocation whose unwritten cells are detectable.
///
/// Cell x is written iff index_[x] < count_ and slots_[index_[x]].back == x.
/// Slots are filled left to right, so a stale or garbage index either points
/// past count_ or at a slot owned by another cell. reset() forgets every
/// write in O(1) and reuses the memory.
template <class T>
class LazyArray {
  static_assert(std::is_trivially_copyable_v<T>, "LazyArray stores trivially copyable values");

 public:
  using Index = std::uint32_t;

  LazyArray() = default;

  explicit LazyArray(std::size_t capacity, Meter* meter = nullptr) : capacity_(capacity), meter_(meter) {
    if (capacity > std::size_t{0xFFFFFFFFu}) throw std::length_error("LazyArray capacity exceeds 2^32-1");
    if (capacity > 0) {
      // calloc hands back lazily zeroed pages; contents are never trusted.
      index_.reset(static_cast<Index*>(std::calloc(capacity, sizeof(Index))));
      if (!index_) throw std::bad_alloc();
      slots_ = std::make_unique_for_overwrite<Slot[]>(capacity);
#if SDENUM_LAZY_GARBAGE
      std::uint64_t state = detail::next_garbage_seed();
      for (std::size_t i = 0; i < capacity; ++i) {
        index_[i] = static_cast<Index>(detail::splitmix64(state));
      }
#endif
    }
    if (meter_ != nullptr) {
      meter_->tick();
      meter_->lazy_cells_allocated += capacity;
    }
  }

  LazyArray(LazyArray&&) noexcept = default;
  LazyArray& operator=(LazyArray&&) noexcept = default;
  LazyArray(const LazyArray&) = delete;
  LazyArray& operator=(const LazyArray&) = delete;

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t written_count() const noexcept { return count_; }

  void reset() noexcept {
    tick(meter_);
    count_ = 0;
  }

  void write(std::size_t x, T value) {
    check(x);
    tick(meter_);
    if (!written_unchecked(x)) {
      index_[x] = static_cast<Index>(count_);
      slots_[count_].back = static_cast<Index>(x);
      ++count_;
    }
    slots_[index_[x]].value = value;
  }

  std::optional<T> read(std::size_t x) const {
    check(x);
    tick(meter_);
    if (!written_unchecked(x)) return std::nullopt;
    return slots_[index_[x]].value;
  }

  bool is_written(std::size_t x) const {
    check(x);
    tick(meter_);
    return written_unchecked(x);
  }

  /// Raw index array, for tests that plant adversarial garbage.
  std::span<Index> backing_index_for_testing() noexcept { return {index_.get(), capacity_}; }

 private:
  struct Slot {
    Index back;
    T value;
  };

  void check(std::size_t x) const {
    if (x >= capacity_) throw std::out_of_range("LazyArray index out of range");
  }

  bool written_unchecked(std::size_t x) const noexcept {
    const Index i = index_[x];
    return i < count_ && slots_[i].back == x;
  }

  std::size_t capacity_ = 0;
  std::size_t count_ = 0;
  std::unique_ptr<Index[], detail::FreeDeleter> index_;
  std::unique_ptr<Slot[]> slots_;
  Meter* meter_ = nullptr;
};

}  // namespace sdenum
