#include <gtest/gtest.h>

#include <atomic>
#include <set>
#include <stdexcept>
#include <vector>

#include "hawkesnet/parallel.hpp"
#include "hawkesnet/rng.hpp"

using namespace hawkesnet;

TEST(Rng, SplitmixMatchesReferenceSequence) {
  // First two outputs of the reference generator started from state 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(Rng, PathSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t j = 0; j < 10000; ++j) seen.insert(path_seed(42, j));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Rng, StreamsDiffer) {
  auto a = make_engine(7, Stream::jumps);
  auto b = make_engine(7, Stream::brownian);
  EXPECT_NE(a(), b());
  auto c = make_engine(7, Stream::jumps);
  auto d = make_engine(7, Stream::jumps);
  EXPECT_EQ(c(), d());
}

TEST(Parallel, EveryIndexRunsOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}

TEST(Parallel, ZeroWorkItemsIsNoop) {
  bool called = false;
  parallel_for(0, 4, [&](std::size_t) { called = true; });
  EXPECT_FALSE(called);
}
