#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdenum/meter.hpp"

namespace sdenum {

/// Binary min-heap with stable handles and decrease-key.
///
/// Handles are issued 0, 1, 2, ... since the last clear(), so the handle
/// doubles as the insertion sequence number: equal keys leave in FIFO order.
/// Every key comparison ticks the meter once.
template <class Payload>
class AddressablePQ {
 public:
  using Key = std::uint64_t;
  using Handle = std::uint32_t;

  struct Entry {
    Key key;
    Payload payload;
  };

  explicit AddressablePQ(Meter* meter = nullptr, std::size_t capacity_hint = 0) : meter_(meter) {
    keys_.reserve(capacity_hint);
    payloads_.reserve(capacity_hint);
    pos_.reserve(capacity_hint);
    heap_.reserve(capacity_hint);
  }

  std::size_t size() const noexcept { return heap_.size(); }
  bool empty() const noexcept { return heap_.empty(); }

  /// Drops every entry and restarts handle numbering.
  void clear() noexcept {
    tick(meter_);
    keys_.clear();
    payloads_.clear();
    pos_.clear();
    heap_.clear();
    ordered_ = true;
    heapify_started_ = false;
  }

  Handle insert(Key key, Payload payload) {
    const Handle h = append(key, std::move(payload));
    if (ordered_) sift_up(heap_.size() - 1);
    return h;
  }

  /// Appends without restoring heap order. The next extract/peek (or an
  /// explicit heapify) restores it in O(size) comparisons.
  Handle insert_unordered(Key key, Payload payload) {
    const Handle h = append(key, std::move(payload));
    ordered_ = heap_.size() <= 1 && ordered_;
    heapify_started_ = false;
    return h;
  }

  void heapify() {
    while (!heapify_step()) {
    }
  }

  /// One sift-down of a pending heapify; returns true once heap order holds.
  /// Lets callers spread the O(size) repair over bounded units of work.
  bool heapify_step() {
    if (ordered_) return true;
    if (!heapify_started_) {
      heapify_next_ = heap_.size() / 2;
      heapify_started_ = true;
    }
    if (heapify_next_ > 0) sift_down(--heapify_next_);
    if (heapify_next_ == 0) {
      ordered_ = true;
      heapify_started_ = false;
    }
    return ordered_;
  }

  bool ordered() const noexcept { return ordered_; }

  void decrease_key(Handle h, Key new_key) {
    if (!contains(h)) throw std::invalid_argument("decrease_key on dead handle");
    if (new_key > keys_[h]) throw std::invalid_argument("decrease_key would increase the key");
    tick(meter_);
    if (new_key == keys_[h]) return;
    keys_[h] = new_key;
    if (ordered_) sift_up(pos_[h]);
  }

  /// Key comparisons performed since construction.
  std::uint64_t comparisons() const noexcept { return comparisons_; }

  bool contains(Handle h) const noexcept { return h < pos_.size() && pos_[h] != kDead; }

  Key key(Handle h) const {
    if (!contains(h)) throw std::invalid_argument("key of dead handle");
    return keys_[h];
  }

  std::optional<Key> peek_min_key() {
    heapify();
    if (heap_.empty()) return std::nullopt;
    return keys_[heap_.front()];
  }

  std::optional<Entry> extract_min() {
    heapify();
    tick(meter_);
    if (heap_.empty()) return std::nullopt;
    const Handle top = heap_.front();
    Entry e{keys_[top], std::move(payloads_[top])};
    pos_[top] = kDead;
    const Handle last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      pos_[last] = 0;
      sift_down(0);
    }
    return e;
  }

 private:
  static constexpr std::uint32_t kDead = std::numeric_limits<std::uint32_t>::max();

  Handle append(Key key, Payload&& payload) {
    tick(meter_);
    const auto h = static_cast<Handle>(keys_.size());
    keys_.push_back(key);
    payloads_.push_back(std::move(payload));
    pos_.push_back(static_cast<std::uint32_t>(heap_.size()));
    heap_.push_back(h);
    return h;
  }

  // (key, handle) lexicographic; the handle is the insertion order.
  bool less(Handle a, Handle b) const noexcept {
    tick(meter_);
    ++comparisons_;
    return keys_[a] < keys_[b] || (keys_[a] == keys_[b] && a < b);
  }

  void place(std::size_t i, Handle h) noexcept {
    heap_[i] = h;
    pos_[h] = static_cast<std::uint32_t>(i);
  }

  void sift_up(std::size_t i) noexcept {
    const Handle h = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(h, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, h);
  }

  void sift_down(std::size_t i) noexcept {
    const Handle h = heap_[i];
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], h)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, h);
  }

  Meter* meter_ = nullptr;
  std::vector<Key> keys_;
  std::vector<Payload> payloads_;
  std::vector<std::uint32_t> pos_;
  std::vector<Handle> heap_;
  bool ordered_ = true;
  bool heapify_started_ = false;
  std::size_t heapify_next_ = 0;
  mutable std::uint64_t comparisons_ = 0;
};

}  // namespace sdenum
