// Per-target search kernels shared by the batch entry points. Internal.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "lbsearch/branchless.hpp"
#include "lbsearch/probe.hpp"
#include "lbsearch/types.hpp"

namespace lbsearch::detail {

struct NoProbe {
  static constexpr bool kEnabled = false;
  void touch() noexcept {}
};

struct CountingProbe {
  static constexpr bool kEnabled = true;
  std::uint32_t count = 0;
  void touch() noexcept { ++count; }
};

template <typename Probe>
inline double load(const double* x, index_t j, Probe& probe) noexcept {
  probe.touch();
  return x[j];
}

/// Comparison result forced to exactly 0 or 1 before it feeds bchoice.
inline index_t as_flag(bool c) noexcept { return static_cast<index_t>(c); }

template <typename Probe>
inline index_t linear_range(const double* x, index_t start, index_t end, double y,
                            Probe& probe) noexcept {
  // Sorted input: the number of qualifying elements past start is the offset.
  index_t count = 0;
  for (index_t j = start + 1; j <= end; ++j) count += as_flag(load(x, j, probe) <= y);
  return start + count;
}

/// linear_range with a trip count fixed at W: always reads W slots after
/// start (clamped to `last`) and masks the ones past end. A constant trip
/// count is what lets the compiler vectorize the loop over targets.
template <index_t W, typename Probe>
inline index_t linear_window(const double* x, index_t start, index_t end, index_t last, double y,
                             Probe& probe) noexcept {
  index_t count = 0;
#pragma GCC unroll 32
  for (index_t j = 1; j <= W; ++j) {
    const index_t k = start + j;
    count += as_flag(k <= end) & as_flag(load(x, branchless_min(k, last), probe) <= y);
  }
  return start + count;
}

/// Calls f(std::integral_constant<index_t, value>) when value is in
/// [0, Max]; returns false otherwise.
template <index_t Max, typename F>
bool with_constant(index_t value, F&& f) {
  return [&]<index_t... I>(std::integer_sequence<index_t, I...>) {
    return ((value == I && (f(std::integral_constant<index_t, I>{}), true)) || ...);
  }(std::make_integer_sequence<index_t, Max + 1>{});
}

template <typename Probe>
inline index_t bisect_range(const double* x, index_t start, index_t end, double y,
                            Probe& probe) noexcept {
  index_t lower = start;
  index_t upper = end + 1;
  while (upper - lower > 1) {
    const index_t mid = (lower + upper) >> 1;
    const index_t c = as_flag(y < load(x, mid, probe));
    upper = bchoice(c, mid, upper);
    lower = bchoice(c ^ 1, mid, lower);
  }
  return lower;
}

/// Cached table endpoints, read once per batch rather than per target.
struct Bounds {
  double front;
  double back;
  index_t last;
};

inline Bounds bounds_of(const SortedTable& table) noexcept {
  return {table.front(), table.back(), table.last_index()};
}

inline index_t clamp_to_bounds(index_t lower, double y, const Bounds& b) noexcept {
  lower = bchoice(as_flag(y < b.front), index_t{0}, lower);
  lower = bchoice(as_flag(y > b.back), b.last, lower);
  return lower;
}

inline void check_output(const TargetBatch& targets, std::span<index_t> out) {
  if (out.size() != targets.size()) {
    throw std::invalid_argument("output span length does not match target batch");
  }
}

/// Runs `kernel(y, probe)` for every target. The uninstrumented path is the
/// vectorizable outer loop; the instrumented path records one count per query.
template <typename Kernel>
void for_each_target(std::span<const double> targets, std::span<index_t> out, Kernel&& kernel) {
  const double* y = targets.data();
  index_t* result = out.data();
  const std::size_t m = targets.size();
#pragma omp simd
  for (std::size_t i = 0; i < m; ++i) {
    NoProbe probe;
    result[i] = kernel(y[i], probe);
  }
}

template <typename Kernel>
void for_each_target(std::span<const double> targets, std::span<index_t> out, ProbeLog& log,
                     Kernel&& kernel) {
  log.per_query.assign(targets.size(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    CountingProbe probe;
    out[i] = kernel(targets[i], probe);
    log.per_query[i] = probe.count;
  }
}

}  // namespace lbsearch::detail
