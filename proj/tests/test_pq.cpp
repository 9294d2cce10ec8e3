#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "sdenum/addressable_pq.hpp"
#include "sdenum/types.hpp"

namespace sdenum {
namespace {

using PQ = AddressablePQ<int>;

TEST(AddressablePQ, ExtractsMinimum) {
  PQ pq;
  pq.insert(5, 0);
  pq.insert(3, 1);
  pq.insert(9, 2);
  const auto e = pq.extract_min();
  ASSERT_TRUE(e);
  EXPECT_EQ(e->key, 3u);
  EXPECT_EQ(e->payload, 1);
  EXPECT_EQ(pq.size(), 2u);
}

TEST(AddressablePQ, EqualKeysLeaveInInsertionOrder) {
  PQ pq;
  pq.insert(2, 10);
  pq.insert(2, 11);
  pq.insert(1, 12);
  pq.insert(2, 13);
  std::vector<int> order;
  while (auto e = pq.extract_min()) order.push_back(e->payload);
  EXPECT_EQ(order, (std::vector<int>{12, 10, 11, 13}));
}

TEST(AddressablePQ, EmptyAndSingle) {
  PQ pq;
  EXPECT_FALSE(pq.extract_min());
  EXPECT_FALSE(pq.peek_min_key());
  pq.insert(7, 1);
  EXPECT_EQ(pq.extract_min()->key, 7u);
  EXPECT_TRUE(pq.empty());
  EXPECT_FALSE(pq.extract_min());
}

TEST(AddressablePQ, RandomInsertsComeOutSorted) {
  std::mt19937_64 rng(4);
  PQ pq;
  std::vector<std::uint64_t> keys(2000);
  for (auto& k : keys) {
    k = rng() % 500;
    pq.insert(k, 0);
  }
  std::ranges::sort(keys);
  std::vector<std::uint64_t> got;
  while (auto e = pq.extract_min()) got.push_back(e->key);
  EXPECT_EQ(got, keys);
}

TEST(AddressablePQ, DecreaseKey) {
  PQ pq;
  pq.insert(5, 0);
  const auto h = pq.insert(7, 1);
  pq.decrease_key(h, 1);
  EXPECT_EQ(pq.extract_min()->key, 1u);
  const auto h2 = pq.insert(4, 2);
  pq.decrease_key(h2, 4);
  EXPECT_EQ(pq.key(h2), 4u);
  EXPECT_EQ(pq.extract_min()->payload, 2);
}

TEST(AddressablePQ, DecreaseKeyErrors) {
  PQ pq;
  const auto h = pq.insert(5, 0);
  EXPECT_THROW(pq.decrease_key(h, 6), std::invalid_argument);
  pq.extract_min();
  EXPECT_THROW(pq.decrease_key(h, 1), std::invalid_argument);
  EXPECT_THROW(pq.decrease_key(99, 1), std::invalid_argument);
  EXPECT_FALSE(pq.contains(h));
}

TEST(AddressablePQ, BulkInsertThenHeapify) {
  std::mt19937_64 rng(8);
  PQ pq;
  std::vector<std::uint64_t> keys(300);
  for (auto& k : keys) {
    k = rng() % 50;
    pq.insert_unordered(k, 0);
  }
  EXPECT_FALSE(pq.ordered());
  std::size_t steps = 0;
  while (!pq.heapify_step()) ++steps;
  EXPECT_LE(steps, keys.size() / 2);
  EXPECT_TRUE(pq.ordered());
  std::ranges::sort(keys);
  std::vector<std::uint64_t> got;
  while (auto e = pq.extract_min()) got.push_back(e->key);
  EXPECT_EQ(got, keys);
}

TEST(AddressablePQ, ExtractionComparisonsAreLogarithmic) {
  std::mt19937_64 rng(2);
  PQ pq;
  for (int i = 0; i < 1024; ++i) pq.insert(rng() % 100000, i);
  std::uint64_t worst = 0;
  while (!pq.empty()) {
    const std::uint64_t size = pq.size();
    const auto before = pq.comparisons();
    pq.extract_min();
    const auto used = pq.comparisons() - before;
    EXPECT_LE(used, 2 * ceil_log2(size)) << "size " << size;
    worst = std::max(worst, used);
  }
  EXPECT_LE(worst, 2u * 10u);
}

// Interleaved operations against a linear-scan oracle with the same
// (key, insertion order) tie-break.
TEST(AddressablePQ, MatchesScanOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    PQ pq;
    std::map<PQ::Handle, std::uint64_t> live;
    std::vector<PQ::Handle> handles;
    for (int op = 0; op < 10'000; ++op) {
      const auto r = rng() % 10;
      if (r < 4) {
        const std::uint64_t k = rng() % 1000;
        const auto h = pq.insert(k, static_cast<int>(handles.size()));
        live[h] = k;
        handles.push_back(h);
      } else if (r < 7 && !live.empty()) {
        auto it = live.begin();
        std::advance(it, static_cast<long>(rng() % live.size()));
        const std::uint64_t nk = it->second == 0 ? 0 : rng() % (it->second + 1);
        pq.decrease_key(it->first, nk);
        it->second = nk;
      } else {
        const auto got = pq.extract_min();
        if (live.empty()) {
          ASSERT_FALSE(got);
          continue;
        }
        auto best = live.begin();
        for (auto it = live.begin(); it != live.end(); ++it) {
          if (it->second < best->second) best = it;
        }
        ASSERT_TRUE(got);
        ASSERT_EQ(got->key, best->second);
        ASSERT_EQ(got->payload, static_cast<int>(best->first));
        live.erase(best);
      }
      ASSERT_EQ(pq.size(), live.size());
    }
  }
}

TEST(AddressablePQ, ClearRestartsHandles) {
  PQ pq;
  pq.insert(1, 0);
  pq.insert(2, 0);
  pq.clear();
  EXPECT_TRUE(pq.empty());
  EXPECT_EQ(pq.insert(3, 0), 0u);
}

}  // namespace
}  // namespace sdenum
