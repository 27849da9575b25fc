#include "lbsearch/branchless.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <random>

namespace lbsearch {
namespace {

TEST(Bchoice, SelectsByFlag) {
  EXPECT_EQ(bchoice(1, 5, 9), 5);
  EXPECT_EQ(bchoice(0, 5, 9), 9);
  EXPECT_EQ(bchoice(1, 7, 7), 7);
  EXPECT_EQ(bchoice(0, 7, 7), 7);
}

TEST(Bchoice, IsConstexpr) {
  static_assert(bchoice(1, 3, 4) == 3);
  static_assert(bchoice<std::int64_t>(0, 3, 4) == 4);
  static_assert(branchless_min(3, 7) == 3);
  static_assert(branchless_max(3, 7) == 7);
}

TEST(BranchlessMinMax, Examples) {
  EXPECT_EQ(branchless_min(3, 7), 3);
  EXPECT_EQ(branchless_max(3, 7), 7);
  EXPECT_EQ(branchless_min(4, 4), 4);
  EXPECT_EQ(branchless_max(4, 4), 4);
}

TEST(BranchlessMinMax, MatchesStdOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> value(-1'000'000, 1'000'000);
  for (int i = 0; i < 100'000; ++i) {
    const std::int64_t a = value(rng);
    const std::int64_t b = value(rng);
    const std::int64_t c = i & 1;
    ASSERT_EQ(bchoice(c, a, b), c == 1 ? a : b);
    ASSERT_EQ(branchless_min(a, b), std::min(a, b));
    ASSERT_EQ(branchless_max(a, b), std::max(a, b));
  }
}

}  // namespace
}  // namespace lbsearch
