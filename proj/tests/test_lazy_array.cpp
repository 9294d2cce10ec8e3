#include <cstdint>
#include <map>
#include <random>

#include "gtest/gtest.h"
#include "sdenum/lazy_array.hpp"
#include "sdenum/meter.hpp"

namespace sdenum {
namespace {

std::uint64_t alloc_cost(std::size_t capacity) {
  Meter m;
  LazyArray<std::uint64_t> a(capacity, &m);
  return m.steps.total();
}

TEST(LazyArray, ZeroCapacity) {
  LazyArray<int> a(0);
  EXPECT_EQ(a.capacity(), 0u);
  EXPECT_THROW(a.read(0), std::out_of_range);
  EXPECT_THROW(a.write(0, 1), std::out_of_range);
}

TEST(LazyArray, FreshArrayIsUnwritten) {
  LazyArray<int> a(1'000'000);
  EXPECT_FALSE(a.is_written(12345));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(a.read(rng() % a.capacity()).has_value());
  EXPECT_EQ(a.written_count(), 0u);
}

TEST(LazyArray, AllocationCostIndependentOfCapacity) {
  EXPECT_EQ(alloc_cost(8), alloc_cost(8'000'000));
  EXPECT_EQ(alloc_cost(1u << 10), alloc_cost(1u << 22));
}

TEST(LazyArray, OperationCostIndependentOfCapacity) {
  auto op_costs = [](std::size_t cap) {
    Meter m;
    LazyArray<int> a(cap, &m);
    std::vector<std::uint64_t> costs;
    auto measure = [&](auto&& f) {
      const auto before = m.steps.total();
      f();
      costs.push_back(m.steps.total() - before);
    };
    measure([&] { a.write(cap - 1, 4); });
    measure([&] { a.write(cap - 1, 5); });
    measure([&] { (void)a.read(cap - 1); });
    measure([&] { (void)a.read(0); });
    measure([&] { (void)a.is_written(cap / 2); });
    measure([&] { a.reset(); });
    return costs;
  };
  EXPECT_EQ(op_costs(1u << 10), op_costs(1u << 16));
  EXPECT_EQ(op_costs(1u << 10), op_costs(1u << 22));
}

TEST(LazyArray, WriteReadOverwrite) {
  LazyArray<int> a(10);
  a.write(3, 7);
  EXPECT_EQ(a.read(3), 7);
  a.write(3, 9);
  EXPECT_EQ(a.read(3), 9);
  EXPECT_EQ(a.written_count(), 1u);
  for (std::size_t x : {0u, 5u, 9u}) a.write(x, 1);
  EXPECT_EQ(a.written_count(), 4u);
  EXPECT_THROW(a.write(10, 1), std::out_of_range);
}

TEST(LazyArray, ResetForgetsEverything) {
  LazyArray<int> a(16);
  for (std::size_t x = 0; x < 16; ++x) a.write(x, static_cast<int>(x));
  a.reset();
  for (std::size_t x = 0; x < 16; ++x) EXPECT_FALSE(a.is_written(x));
  a.write(4, 1);
  EXPECT_EQ(a.read(4), 1);
  EXPECT_FALSE(a.is_written(0));
}

TEST(LazyArray, ZeroFilledIndexDoesNotAlias) {
  LazyArray<int> a(8);
  for (auto& i : a.backing_index_for_testing()) i = 0;
  a.write(0, 42);  // slot 0 now has back pointer 0
  EXPECT_EQ(a.read(0), 42);
  for (std::size_t x = 1; x < 8; ++x) EXPECT_FALSE(a.is_written(x)) << x;
}

TEST(LazyArray, AdversarialIndexPatterns) {
  // Every garbage index either points past the count or at a slot whose back
  // pointer names a different cell.
  const std::size_t cap = 64;
  for (int pattern = 0; pattern < 4; ++pattern) {
    LazyArray<int> a(cap);
    auto idx = a.backing_index_for_testing();
    std::mt19937_64 rng(pattern);
    for (std::size_t x = 0; x < cap; ++x) {
      switch (pattern) {
        case 0: idx[x] = static_cast<std::uint32_t>(x); break;
        case 1: idx[x] = static_cast<std::uint32_t>(cap - 1 - x); break;
        case 2: idx[x] = 0xFFFFFFFFu; break;
        default: idx[x] = static_cast<std::uint32_t>(rng() % 4); break;
      }
    }
    for (std::size_t x = 0; x < cap; x += 2) a.write(x, static_cast<int>(x));
    for (std::size_t x = 0; x < cap; ++x) {
      EXPECT_EQ(a.is_written(x), x % 2 == 0) << "pattern " << pattern << " cell " << x;
    }
    a.reset();
    a.write(1, 1);
    for (std::size_t x = 0; x < cap; ++x) EXPECT_EQ(a.is_written(x), x == 1);
  }
}

TEST(LazyArray, RandomOperationsMatchMap) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t cap = 1 + rng() % 500;
    LazyArray<std::uint64_t> a(cap);
    std::map<std::size_t, std::uint64_t> oracle;
    for (int op = 0; op < 10'000; ++op) {
      const std::size_t x = rng() % cap;
      switch (rng() % 10) {
        case 0:
          if (rng() % 20 == 0) {
            a.reset();
            oracle.clear();
          }
          break;
        case 1: case 2: case 3: case 4: {
          const std::uint64_t v = rng();
          a.write(x, v);
          oracle[x] = v;
          break;
        }
        default: {
          const auto it = oracle.find(x);
          const auto got = a.read(x);
          ASSERT_EQ(got.has_value(), it != oracle.end()) << "seed " << seed << " op " << op;
          if (got) {
            ASSERT_EQ(*got, it->second);
          }
        }
      }
      ASSERT_EQ(a.written_count(), oracle.size());
    }
  }
}

TEST(LazyArray, MeterCountsCells) {
  Meter m;
  LazyArray<int> a(100, &m);
  LazyArray<int> b(50, &m);
  EXPECT_EQ(m.lazy_cells_allocated, 150u);
}

}  // namespace
}  // namespace sdenum
