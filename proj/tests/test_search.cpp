#include "lbsearch/search.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "lbsearch/error.hpp"
#include "support/fixtures.hpp"

namespace lbsearch {
namespace {

std::vector<index_t> as_vector(const IndexResult& r) {
  return {r.indices.begin(), r.indices.end()};
}

// Independent of the scan oracle: one past the last element <= y, minus one.
index_t upper_bound_reference(const SortedTable& table, double y) {
  const auto x = table.values();
  const auto it = std::upper_bound(x.begin(), x.end(), y);
  return std::max<index_t>(it - x.begin() - 1, 0);
}

TEST(SortedTable, RejectsInvalidInput) {
  EXPECT_THROW(SortedTable({1.0}), ValidationError);
  EXPECT_THROW(SortedTable({2.0, 1.0}), ValidationError);
  EXPECT_THROW(SortedTable({1.0, std::numeric_limits<double>::infinity()}), ValidationError);
  EXPECT_THROW(SortedTable({std::numeric_limits<double>::quiet_NaN(), 1.0}), ValidationError);
  EXPECT_NO_THROW(SortedTable({1.0, 1.0}));
}

TEST(TargetBatch, RejectsNaNAndEmpty) {
  EXPECT_THROW(TargetBatch({1.0, std::numeric_limits<double>::quiet_NaN()}), ValidationError);
  EXPECT_THROW(TargetBatch(std::span<const double>{}), ValidationError);
}

TEST(IndexResult, BufferIsVectorAligned) {
  IndexResult r(17);
  EXPECT_EQ(reinterpret_cast<std::uintptr_t>(r.indices.data()) % kBufferAlignment, 0u);
}

TEST(LowerBoundOracle, Examples) {
  const SortedTable x{1, 2, 4, 8};
  EXPECT_EQ(lower_bound_oracle(x, 3), 1);
  EXPECT_EQ(lower_bound_oracle(x, 0.5), 0);
  EXPECT_EQ(lower_bound_oracle(x, 9), 3);
  EXPECT_EQ(lower_bound_oracle(SortedTable{1, 2, 2, 3}, 2), 2);
}

TEST(LowerBoundOracle, AgreesWithUpperBoundReference) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const SortedTable x = testing::random_table(rng);
    for (double y : testing::mixed_targets(rng, x, 200)) {
      ASSERT_EQ(lower_bound_oracle(x, y), upper_bound_reference(x, y));
    }
  }
}

TEST(LinearSearchRange, Examples) {
  const SortedTable x{1, 2, 4, 8};
  EXPECT_EQ(linear_search_range(x, 1, 3, 5), 2);
  EXPECT_EQ(linear_search_range(x, 2, 2, 100), 2);
  EXPECT_EQ(linear_search_range(x, 1, 3, 1.5), 1);
  EXPECT_EQ(linear_search_range(x, 2, 3, 0.0), 2);  // none qualify: start
}

TEST(BinarySearchRange, Examples) {
  const SortedTable x{1, 2, 4, 8, 16};
  EXPECT_EQ(binary_search_range(x, 0, 4, 5), 2);
  EXPECT_EQ(binary_search_range(x, 2, 4, 4), 2);
  EXPECT_EQ(binary_search_range(x, 3, 3, 1), 3);
}

TEST(BinarySearchRange, MatchesLinearOnSmallTables) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const SortedTable x = testing::random_table(rng, {.min_n = 2, .max_n = 24});
    std::vector<double> probes(x.values().begin(), x.values().end());
    for (std::size_t j = 0; j + 1 < x.size(); ++j) probes.push_back(0.5 * (x[j] + x[j + 1]));
    probes.push_back(x.front() - 1.0);
    probes.push_back(x.back() + 1.0);
    const auto last = x.last_index();
    for (index_t s = 0; s <= last; ++s) {
      for (index_t e = s; e <= last; ++e) {
        for (double y : probes) {
          ASSERT_EQ(binary_search_range(x, s, e, y), linear_search_range(x, s, e, y))
              << "s=" << s << " e=" << e << " y=" << y;
        }
      }
    }
  }
}

TEST(LinearSearchBatch, Examples) {
  const SortedTable x{1, 2, 4, 8};
  EXPECT_EQ(as_vector(linear_search_batch(x, TargetBatch{3, 0.5, 9})),
            (std::vector<index_t>{1, 0, 3}));
  EXPECT_EQ(as_vector(linear_search_batch(SortedTable{1, 2}, TargetBatch{1})),
            (std::vector<index_t>{0}));
}

TEST(BinarySearchBranchlessBatch, Examples) {
  const SortedTable x{1, 2, 4, 8};
  EXPECT_EQ(as_vector(binary_search_branchless_batch(x, TargetBatch{3})),
            (std::vector<index_t>{1}));
  EXPECT_EQ(as_vector(binary_search_branchless_batch(x, TargetBatch{0.5})),
            (std::vector<index_t>{0}));
}

TEST(HuntLocateBatch, Examples) {
  EXPECT_EQ(as_vector(hunt_locate_batch(SortedTable{1, 2, 4, 8, 16, 32}, TargetBatch{9})),
            (std::vector<index_t>{3}));
  EXPECT_EQ(as_vector(hunt_locate_batch(SortedTable{1, 2}, TargetBatch{0})),
            (std::vector<index_t>{0}));
}

TEST(HuntLocateBatch, GallopPassesDuplicates) {
  const SortedTable x{1, 2, 2, 2};
  EXPECT_EQ(as_vector(hunt_locate_batch(x, TargetBatch{2})), (std::vector<index_t>{3}));
  const SortedTable y{1, 1, 1, 1, 1, 1, 1, 5};
  EXPECT_EQ(as_vector(hunt_locate_batch(y, TargetBatch{1, 5, 4})),
            (std::vector<index_t>{6, 7, 6}));
}

TEST(HuntLocateBatch, ProbesFollowTheGallop) {
  // Gallop reads X[1], X[2], X[4]; bisecting [2, 4] reads X[3] then X[4].
  ProbeLog probes;
  const auto r = hunt_locate_batch(SortedTable{1, 2, 4, 8, 16, 32}, TargetBatch{9}, probes);
  EXPECT_EQ(r[0], 3);
  EXPECT_EQ(probes.per_query, (std::vector<std::uint32_t>{5}));
}

TEST(BatchSearch, SpanOverloadChecksLength) {
  const SortedTable x{1, 2};
  std::vector<index_t> out(3);
  EXPECT_THROW(linear_search_batch(x, TargetBatch{1, 2}, out), std::invalid_argument);
}

using BatchFn = IndexResult (*)(const SortedTable&, const TargetBatch&);

class IndexFreeSearch : public ::testing::TestWithParam<BatchFn> {};

TEST_P(IndexFreeSearch, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 300; ++t) {
    const SortedTable x = testing::random_table(rng);
    const TargetBatch y = testing::mixed_batch(rng, x, 500);
    ASSERT_EQ(GetParam()(x, y), lower_bound_oracle_batch(x, y)) << "table " << t;
  }
}

TEST_P(IndexFreeSearch, LogSpacedTableAndWideTargets) {
  std::vector<double> values(110);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::pow(10.0, -5.5 + 10.25 * static_cast<double>(i) / 109.0);
  }
  const SortedTable x(values);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> target(1e-10, 1e10);
  std::vector<double> y(1000);
  for (double& v : y) v = target(rng);
  const TargetBatch batch(y);
  EXPECT_EQ(GetParam()(x, batch), lower_bound_oracle_batch(x, batch));
}

TEST_P(IndexFreeSearch, PermutingTargetsPermutesOutput) {
  std::mt19937_64 rng(17);
  const SortedTable x = testing::random_table(rng);
  std::vector<double> y = testing::mixed_targets(rng, x, 1000);
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<double> shuffled(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) shuffled[i] = y[order[i]];

  const IndexResult base = GetParam()(x, TargetBatch(y));
  const IndexResult moved = GetParam()(x, TargetBatch(shuffled));
  for (std::size_t i = 0; i < y.size(); ++i) ASSERT_EQ(moved[i], base[order[i]]);
  EXPECT_EQ(GetParam()(x, TargetBatch(y)), base);
}

INSTANTIATE_TEST_SUITE_P(Kernels, IndexFreeSearch,
                         ::testing::Values(BatchFn{&linear_search_batch},
                                           BatchFn{&binary_search_branchless_batch},
                                           BatchFn{&hunt_locate_batch}));

TEST(ProbeCounting, InstrumentedResultsEqualPlainResults) {
  std::mt19937_64 rng(23);
  const SortedTable x = testing::random_table(rng);
  const TargetBatch y = testing::mixed_batch(rng, x, 300);
  ProbeLog probes;
  EXPECT_EQ(linear_search_batch(x, y, probes), linear_search_batch(x, y));
  EXPECT_EQ(probes.per_query.size(), y.size());
  EXPECT_EQ(probes.max(), x.size());
  EXPECT_EQ(binary_search_branchless_batch(x, y, probes), binary_search_branchless_batch(x, y));
  EXPECT_EQ(hunt_locate_batch(x, y, probes), hunt_locate_batch(x, y));
}

}  // namespace
}  // namespace lbsearch
