#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "lshlab/parallel.hpp"
#include "lshlab/point.hpp"
#include "lshlab/rng.hpp"

using namespace lshlab;

TEST(Point, StringRoundTrip) {
  const auto p = Point::from_string("01011");
  EXPECT_EQ(p.dim(), 5u);
  EXPECT_FALSE(p.bit(0));
  EXPECT_TRUE(p.bit(1));
  EXPECT_TRUE(p.bit(3));
  EXPECT_EQ(p.to_string(), "01011");
  EXPECT_EQ(p.to_index(), 0b11010u);
  EXPECT_EQ(Point::from_index(0b11010, 5), p);
}

TEST(Point, RejectsBadCharacters) { EXPECT_THROW(Point::from_string("01a"), std::invalid_argument); }

TEST(Point, WideHamming) {
  Point a(130), b(130);
  b.set(0, true);
  b.set(64, true);
  b.set(129, true);
  EXPECT_EQ(hamming(a, b), 3u);
  EXPECT_EQ(b.popcount(), 3u);
  EXPECT_EQ(Point::from_string(b.to_string()), b);
}

TEST(Point, HammingDimensionMismatch) { EXPECT_THROW(hamming(Point(3), Point(4)), std::invalid_argument); }

TEST(Point, Jaccard) {
  const auto a = Point::from_string("1100");
  const auto b = Point::from_string("0110");
  EXPECT_EQ(intersection_size(a, b), 1u);
  EXPECT_EQ(union_size(a, b), 3u);
  EXPECT_DOUBLE_EQ(jaccard_distance(a, b), 2.0 / 3.0);
  EXPECT_EQ(jaccard_distance(Point(4), Point(4)), 0.0);
  EXPECT_EQ(jaccard_distance(a, a), 0.0);
}

TEST(CounterRng, DeterministicStreams) {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  EXPECT_EQ(a.position(), 10u);
}

TEST(CounterRng, BelowIsInRangeAndRoughlyUniform) {
  CounterRng rng(1);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n / 7.0));
}

TEST(CounterRng, UniformInUnitInterval) {
  CounterRng rng(3);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(CounterRng, SubstreamsDiffer) {
  CounterRng rng(5);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 100; ++i) firsts.insert(rng.substream(i).next());
  EXPECT_EQ(firsts.size(), 100u);
  EXPECT_EQ(rng.position(), 0u);
}

TEST(Parallel, ChunksRunOnceAndRethrow) {
  std::vector<int> hits(37, 0);
  parallel_chunks(hits.size(), [&](std::size_t c) { hits[c] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_chunks(5, [](std::size_t c) { if (c == 3) throw std::runtime_error("x"); }),
               std::runtime_error);
}
