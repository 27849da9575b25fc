#include "lbsearch/search.hpp"

#include <algorithm>
#include <numeric>

#include "kernels.hpp"

namespace lbsearch {

using detail::bisect_range;
using detail::Bounds;
using detail::clamp_to_bounds;
using detail::for_each_target;
using detail::linear_range;
using detail::load;

double ProbeLog::mean() const noexcept {
  if (per_query.empty()) return 0.0;
  const double total = std::accumulate(per_query.begin(), per_query.end(), 0.0);
  return total / static_cast<double>(per_query.size());
}

std::uint32_t ProbeLog::max() const noexcept {
  return per_query.empty() ? 0 : *std::max_element(per_query.begin(), per_query.end());
}

index_t lower_bound_oracle(const SortedTable& table, double target) noexcept {
  const auto x = table.values();
  index_t answer = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] <= target) answer = static_cast<index_t>(j);
  }
  return answer;
}

IndexResult lower_bound_oracle_batch(const SortedTable& table, const TargetBatch& targets) {
  IndexResult result(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    result.indices[i] = lower_bound_oracle(table, targets[i]);
  }
  return result;
}

index_t linear_search_range(const SortedTable& table, index_t start, index_t end,
                            double target) noexcept {
  detail::NoProbe probe;
  return linear_range(table.values().data(), start, end, target, probe);
}

index_t binary_search_range(const SortedTable& table, index_t start, index_t end,
                            double target) noexcept {
  detail::NoProbe probe;
  return bisect_range(table.values().data(), start, end, target, probe);
}

// ---------------------------------------------------------------------------
// Linear

namespace {

auto linear_kernel(const SortedTable& table) {
  const double* x = table.values().data();
  const index_t n = static_cast<index_t>(table.size());
  // Counting over the whole table has no early exit, so every lane does the
  // same work. Targets below x[0] count zero and land on index 0 directly.
  return [x, n](double y, auto& probe) {
    index_t count = 0;
    for (index_t j = 0; j < n; ++j) count += detail::as_flag(load(x, j, probe) <= y);
    return branchless_max(count - 1, index_t{0});
  };
}

}  // namespace

void linear_search_batch(const SortedTable& table, const TargetBatch& targets,
                         std::span<index_t> out) {
  detail::check_output(targets, out);
  for_each_target(targets.values(), out, linear_kernel(table));
}

IndexResult linear_search_batch(const SortedTable& table, const TargetBatch& targets) {
  IndexResult result(targets.size());
  linear_search_batch(table, targets, result.span());
  return result;
}

IndexResult linear_search_batch(const SortedTable& table, const TargetBatch& targets,
                                ProbeLog& probes) {
  IndexResult result(targets.size());
  for_each_target(targets.values(), result.span(), probes, linear_kernel(table));
  return result;
}

// ---------------------------------------------------------------------------
// Branchless binary

namespace {

auto binary_kernel(const SortedTable& table) {
  const double* x = table.values().data();
  const Bounds b = detail::bounds_of(table);
  const index_t n = b.last + 1;
  return [x, b, n](double y, auto& probe) {
    index_t lower = 0;
    index_t upper = n;
    while (upper - lower > 1) {
      const index_t mid = (lower + upper) >> 1;
      const index_t c = detail::as_flag(y < load(x, mid, probe));
      upper = bchoice(c, mid, upper);
      lower = bchoice(c ^ 1, mid, lower);
    }
    return clamp_to_bounds(lower, y, b);
  };
}

}  // namespace

void binary_search_branchless_batch(const SortedTable& table, const TargetBatch& targets,
                                    std::span<index_t> out) {
  detail::check_output(targets, out);
  for_each_target(targets.values(), out, binary_kernel(table));
}

IndexResult binary_search_branchless_batch(const SortedTable& table, const TargetBatch& targets) {
  IndexResult result(targets.size());
  binary_search_branchless_batch(table, targets, result.span());
  return result;
}

IndexResult binary_search_branchless_batch(const SortedTable& table, const TargetBatch& targets,
                                           ProbeLog& probes) {
  IndexResult result(targets.size());
  for_each_target(targets.values(), result.span(), probes, binary_kernel(table));
  return result;
}

// ---------------------------------------------------------------------------
// Hunt and locate

namespace {

auto hunt_kernel(const SortedTable& table) {
  const double* x = table.values().data();
  const Bounds b = detail::bounds_of(table);
  const index_t n = b.last + 1;
  return [x, b, n](double y, auto& probe) -> index_t {
    if (y < b.front) return 0;
    if (y > b.back) return b.last;
    index_t start = 0;
    index_t end = 1;
    // >= rather than >: with duplicates the gallop must pass every copy of y.
    while (end < n && y >= load(x, end, probe)) {
      start = end;
      end <<= 1;
    }
    return bisect_range(x, branchless_max(start, index_t{0}),
                        branchless_min(end, b.last), y, probe);
  };
}

}  // namespace

void hunt_locate_batch(const SortedTable& table, const TargetBatch& targets,
                       std::span<index_t> out) {
  detail::check_output(targets, out);
  for_each_target(targets.values(), out, hunt_kernel(table));
}

IndexResult hunt_locate_batch(const SortedTable& table, const TargetBatch& targets) {
  IndexResult result(targets.size());
  hunt_locate_batch(table, targets, result.span());
  return result;
}

IndexResult hunt_locate_batch(const SortedTable& table, const TargetBatch& targets,
                              ProbeLog& probes) {
  IndexResult result(targets.size());
  for_each_target(targets.values(), result.span(), probes, hunt_kernel(table));
  return result;
}

}  // namespace lbsearch
