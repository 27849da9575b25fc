#pragma once

#include <span>

#include "lbsearch/probe.hpp"
#include "lbsearch/types.hpp"

namespace lbsearch {

// Every search in this library answers the same question: the index of the
// last table element that is <= the target. Targets below the first element
// map to 0, targets above the last element map to n-1.

/// Ground truth. A plain left-to-right scan keeping the last qualifying index.
index_t lower_bound_oracle(const SortedTable& table, double target) noexcept;
IndexResult lower_bound_oracle_batch(const SortedTable& table, const TargetBatch& targets);

/// Largest j in [start, end] with table[j] <= target, or start if there is none.
/// Requires 0 <= start <= end <= n-1.
index_t linear_search_range(const SortedTable& table, index_t start, index_t end,
                            double target) noexcept;
/// Same contract as linear_search_range, by bisection.
index_t binary_search_range(const SortedTable& table, index_t start, index_t end,
                            double target) noexcept;

// Batch searches. The span overloads write into caller storage, which must
// hold targets.size() elements. The ProbeLog overloads run an unvectorized
// instrumented variant that counts data-array reads per query.

void linear_search_batch(const SortedTable& table, const TargetBatch& targets,
                         std::span<index_t> out);
IndexResult linear_search_batch(const SortedTable& table, const TargetBatch& targets);
IndexResult linear_search_batch(const SortedTable& table, const TargetBatch& targets,
                                ProbeLog& probes);

void binary_search_branchless_batch(const SortedTable& table, const TargetBatch& targets,
                                    std::span<index_t> out);
IndexResult binary_search_branchless_batch(const SortedTable& table, const TargetBatch& targets);
IndexResult binary_search_branchless_batch(const SortedTable& table, const TargetBatch& targets,
                                           ProbeLog& probes);

/// Stateless hunt-and-locate: gallop from (0, 1) for every target, then
/// bisect the bracket.
void hunt_locate_batch(const SortedTable& table, const TargetBatch& targets,
                       std::span<index_t> out);
IndexResult hunt_locate_batch(const SortedTable& table, const TargetBatch& targets);
IndexResult hunt_locate_batch(const SortedTable& table, const TargetBatch& targets,
                              ProbeLog& probes);

}  // namespace lbsearch
