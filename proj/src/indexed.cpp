#include "lbsearch/indexed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "kernels.hpp"
#include "lbsearch/error.hpp"

namespace lbsearch {

using detail::as_flag;
using detail::bisect_range;
using detail::Bounds;
using detail::clamp_to_bounds;
using detail::for_each_target;
using detail::linear_range;

// ---------------------------------------------------------------------------
// Skiplist

SkipIndex build_skip_index(const SortedTable& table, index_t skip) {
  if (skip < 1) throw ValidationError("skip factor must be >= 1, got " + std::to_string(skip));
  const auto x = table.values();
  const auto n = static_cast<index_t>(x.size());
  SkipIndex index;
  index.skip = skip;
  index.table_size = n;
  index.skip_values.resize(static_cast<std::size_t>((n + skip - 1) / skip));
  for (std::size_t i = 0; i < index.skip_values.size(); ++i) {
    index.skip_values[i] = x[static_cast<std::size_t>(skip) * i];
  }
  return index;
}

namespace {

void check_skip_index(const SortedTable& table, const SkipIndex& index) {
  if (index.table_size != static_cast<index_t>(table.size())) {
    throw ValidationError("skip index was built for a different table");
  }
}

auto skiplist_kernel(const SortedTable& table, const SkipIndex& index) {
  const double* x = table.values().data();
  const double* skip_values = index.skip_values.data();
  const auto len = static_cast<index_t>(index.skip_values.size());
  const index_t skip = index.skip;
  const Bounds b = detail::bounds_of(table);
  return [=](double y, auto& probe) {
    // Block search over the skip values; these reads are not data-array probes.
    index_t lower = 0;
    index_t upper = len;
    while (upper - lower > 1) {
      const index_t mid = (lower + upper) >> 1;
      const index_t c = as_flag(y < skip_values[mid]);
      upper = bchoice(c, mid, upper);
      lower = bchoice(c ^ 1, mid, lower);
    }
    const index_t start = skip * lower;
    const index_t end = branchless_min(start + skip, b.last);
    return clamp_to_bounds(linear_range(x, start, end, y, probe), y, b);
  };
}

/// Same answers as skiplist_kernel with every trip count fixed: Steps halvings
/// over the skip values (Steps = ceil(log2 len)) and a Skip-wide window.
template <index_t Skip, index_t Steps>
auto skiplist_fixed_kernel(const SortedTable& table, const SkipIndex& index) {
  const double* x = table.values().data();
  const double* skip_values = index.skip_values.data();
  const auto len = static_cast<index_t>(index.skip_values.size());
  const Bounds b = detail::bounds_of(table);
  return [=](double y, auto& probe) {
    index_t block = 0;
    index_t size = len;
#pragma GCC unroll 32
    for (index_t step = 0; step < Steps; ++step) {
      const index_t half = size >> 1;
      block = bchoice(as_flag(skip_values[block + half] <= y), block + half, block);
      size -= half;
    }
    const index_t start = Skip * block;
    const index_t end = branchless_min(start + Skip, b.last);
    return clamp_to_bounds(detail::linear_window<Skip>(x, start, end, b.last, y, probe), y, b);
  };
}

/// Largest skip-value count served by the fixed kernel.
constexpr index_t kMaxFixedSteps = 12;

index_t halving_steps(index_t len) noexcept {
  index_t steps = 0;
  for (index_t size = len; size > 1; size -= size >> 1) ++steps;
  return steps;
}

/// Runs `run(kernel)` with the fixed kernel when the skip factor and table
/// size allow it, otherwise with the general one.
template <typename Run>
void with_skiplist_kernel(const SortedTable& table, const SkipIndex& index, Run&& run) {
  const index_t steps = halving_steps(static_cast<index_t>(index.skip_values.size()));
  const auto fixed_for = [&](auto skip) {
    return detail::with_constant<kMaxFixedSteps>(steps, [&](auto n) {
      run(skiplist_fixed_kernel<decltype(skip)::value, decltype(n)::value>(table, index));
    });
  };
  bool fixed = false;
  switch (index.skip) {
    case 4: fixed = fixed_for(std::integral_constant<index_t, 4>{}); break;
    case 8: fixed = fixed_for(std::integral_constant<index_t, 8>{}); break;
    case 16: fixed = fixed_for(std::integral_constant<index_t, 16>{}); break;
    default: break;
  }
  if (!fixed) run(skiplist_kernel(table, index));
}

}  // namespace

void skiplist_search_batch(const SortedTable& table, const SkipIndex& index,
                           const TargetBatch& targets, std::span<index_t> out) {
  check_skip_index(table, index);
  detail::check_output(targets, out);
  with_skiplist_kernel(table, index,
                       [&](auto kernel) { for_each_target(targets.values(), out, kernel); });
}

IndexResult skiplist_search_batch(const SortedTable& table, const SkipIndex& index,
                                  const TargetBatch& targets) {
  IndexResult result(targets.size());
  skiplist_search_batch(table, index, targets, result.span());
  return result;
}

IndexResult skiplist_search_batch(const SortedTable& table, const SkipIndex& index,
                                  const TargetBatch& targets, ProbeLog& probes) {
  check_skip_index(table, index);
  IndexResult result(targets.size());
  with_skiplist_kernel(table, index, [&](auto kernel) {
    for_each_target(targets.values(), result.span(), probes, kernel);
  });
  return result;
}

// ---------------------------------------------------------------------------
// Shared hash-table construction and query

namespace {

struct PositiveRange {
  double xmin_pos;
  double xmax;
};

PositiveRange positive_range(const SortedTable& table) {
  const auto x = table.values();
  const auto first_positive = std::upper_bound(x.begin(), x.end(), 0.0);
  if (x.end() - first_positive < 2) {
    throw ValidationError("hash index needs at least two strictly positive table values");
  }
  if (*first_positive == x.back()) {
    throw ValidationError("hash index needs a non-degenerate positive value range");
  }
  return {*first_positive, x.back()};
}

struct BinTables {
  std::vector<index_t> first_index;
  std::vector<index_t> last_index;
};

/// `bin_of` maps a positive table value to a bin already clamped to
/// [0, bin_count-1]; it must be non-decreasing in its argument.
template <typename BinOf>
BinTables build_bins(const SortedTable& table, index_t bin_count, BinOf bin_of) {
  const auto x = table.values();
  const index_t n = static_cast<index_t>(x.size());
  const auto bins = static_cast<std::size_t>(bin_count);

  BinTables t;
  t.first_index.assign(bins, n - 1);
  std::vector<char> filled(bins, 0);
  std::vector<index_t> top(bins, -1);
  index_t last_nonpositive = -1;

  for (index_t j = 0; j < n; ++j) {
    const double v = x[static_cast<std::size_t>(j)];
    if (!(v > 0.0)) {
      last_nonpositive = j;
      continue;
    }
    const auto bin = static_cast<std::size_t>(bin_of(v));
    t.first_index[bin] = std::min(t.first_index[bin], j);
    top[bin] = std::max(top[bin], j);
    filled[bin] = 1;
  }

  // Empty bins point one below their successor. A run of empty bins longer
  // than the preceding bin's occupancy would step below that bin's entry, so
  // a forward running max restores monotonicity.
  for (std::size_t i = bins - 1; i-- > 0;) {
    if (!filled[i]) t.first_index[i] = std::max<index_t>(t.first_index[i + 1] - 1, 0);
  }
  for (std::size_t i = 1; i < bins; ++i) {
    t.first_index[i] = std::max(t.first_index[i], t.first_index[i - 1]);
  }

  t.last_index.resize(bins);
  index_t running = last_nonpositive;
  for (std::size_t i = 0; i < bins; ++i) {
    running = std::max(running, top[i]);
    t.last_index[i] = std::max<index_t>(running, 0);
  }
  return t;
}

inline HashRange range_for_bin(const index_t* first_index, const index_t* last_index,
                               index_t bin) noexcept {
  // One below the bin's first entry: a target smaller than every value in its
  // own bin resolves to the last value of the preceding bins. Bin 0 also
  // receives every target below xmin_pos, so it starts at the table head to
  // cover non-positive entries.
  const index_t start = branchless_max(first_index[bin] - 1, index_t{0});
  return {bchoice(as_flag(bin == 0), index_t{0}, start), last_index[bin]};
}

/// Widest bin range in the index; the fixed-width interior reads this many
/// slots per target.
inline index_t max_span(const index_t* first_index, const index_t* last_index, index_t bins) {
  index_t widest = 0;
  for (index_t bin = 0; bin < bins; ++bin) {
    const HashRange r = range_for_bin(first_index, last_index, bin);
    widest = std::max(widest, r.end - r.start);
  }
  return widest;
}

/// Widest bin range served by a fixed-width interior; wider tables fall back
/// to the variable-length loop.
constexpr index_t kMaxWindow = 16;

/// Interior search modes of the hash kernel. kWindow is the linear interior
/// with a trip count of Width.
enum class Interior { kLinear, kWindow, kBinary };

template <Interior Mode, index_t Width, typename BinOf>
auto hash_kernel(const SortedTable& table, const index_t* first_index, const index_t* last_index,
                 double xmin_pos, double xmax, BinOf bin_of) {
  const double* x = table.values().data();
  const Bounds b = detail::bounds_of(table);
  return [=](double y, auto& probe) {
    const double hashed = std::min(std::max(y, xmin_pos), xmax);
    const HashRange r = range_for_bin(first_index, last_index, bin_of(hashed));
    index_t lower;
    if constexpr (Mode == Interior::kWindow) {
      lower = detail::linear_window<Width>(x, r.start, r.end, b.last, y, probe);
    } else if constexpr (Mode == Interior::kLinear) {
      lower = linear_range(x, r.start, r.end, y, probe);
    } else {
      lower = bisect_range(x, r.start, r.end, y, probe);
    }
    return clamp_to_bounds(lower, y, b);
  };
}

template <typename Index>
void check_hash_index(const SortedTable& table, const Index& index) {
  if (index.table_size != static_cast<index_t>(table.size()) || index.first_index.empty() ||
      index.first_index.size() != index.last_index.size()) {
    throw ValidationError("hash index was built for a different table");
  }
}

/// Dispatches on the interior search once per batch, outside the target loop.
template <typename Index, typename BinOf, typename Run>
void with_hash_kernel(const SortedTable& table, const Index& index, BinOf bin_of, Run&& run) {
  check_hash_index(table, index);
  const index_t* first = index.first_index.data();
  const index_t* last = index.last_index.data();
  if (index.interior == InteriorSearch::kBinary) {
    run(hash_kernel<Interior::kBinary, 0>(table, first, last, index.xmin_pos, index.xmax, bin_of));
    return;
  }
  const bool fixed = detail::with_constant<kMaxWindow>(
      max_span(first, last, index.bin_count()), [&](auto width) {
        run(hash_kernel<Interior::kWindow, decltype(width)::value>(table, first, last, index.xmin_pos,
                                                    index.xmax, bin_of));
      });
  if (!fixed) {
    run(hash_kernel<Interior::kLinear, 0>(table, first, last, index.xmin_pos, index.xmax, bin_of));
  }
}

inline index_t clamp_bin(index_t bin, index_t bin_count) noexcept {
  return branchless_min(branchless_max(bin, index_t{0}), bin_count - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Logarithm hash

double compute_hash_base(double xmin_pos, double xmax, index_t hash_size) {
  if (!(xmin_pos > 0.0) || !std::isfinite(xmax) || !(xmin_pos < xmax)) {
    throw ValidationError("hash base needs 0 < xmin_pos < xmax");
  }
  if (hash_size < 1) throw ValidationError("hash size must be >= 1");
  return std::pow(10.0, (std::log10(xmax) - std::log10(xmin_pos)) / static_cast<double>(hash_size));
}

index_t log_hash(double x, double base, index_t offset) noexcept {
  return static_cast<index_t>(std::floor(std::log(x) / std::log(base))) + offset;
}

namespace {

struct LogBin {
  double log_base;
  index_t offset;
  index_t bin_count;

  index_t raw(double x) const noexcept {
    return static_cast<index_t>(std::floor(std::log(x) / log_base)) + offset;
  }
  index_t operator()(double x) const noexcept { return clamp_bin(raw(x), bin_count); }
};

LogBin log_bin_of(const LogHashIndex& index) noexcept {
  return {index.log_base, index.offset, index.bin_count()};
}

}  // namespace

index_t raw_log_bin(const LogHashIndex& index, double x) noexcept {
  return log_bin_of(index).raw(x);
}

LogHashIndex build_log_hash_index(const SortedTable& table, const LogHashOptions& options) {
  const PositiveRange range = positive_range(table);
  const index_t n = static_cast<index_t>(table.size());
  const index_t hash_size = options.hash_size == 0 ? 2 * n : options.hash_size;

  LogHashIndex index;
  index.base = compute_hash_base(range.xmin_pos, range.xmax, hash_size);
  index.log_base = std::log(index.base);
  index.offset = -static_cast<index_t>(std::floor(std::log(range.xmin_pos) / index.log_base));
  index.xmin_pos = range.xmin_pos;
  index.xmax = range.xmax;
  index.table_size = n;
  index.interior = options.interior;

  BinTables t = build_bins(table, hash_size, LogBin{index.log_base, index.offset, hash_size});
  index.first_index = std::move(t.first_index);
  index.last_index = std::move(t.last_index);
  return index;
}

HashRange hash_range(const LogHashIndex& index, double target) noexcept {
  const double hashed = std::min(std::max(target, index.xmin_pos), index.xmax);
  return range_for_bin(index.first_index.data(), index.last_index.data(),
                       log_bin_of(index)(hashed));
}

void log_hash_search_batch(const SortedTable& table, const LogHashIndex& index,
                           const TargetBatch& targets, std::span<index_t> out) {
  detail::check_output(targets, out);
  with_hash_kernel(table, index, log_bin_of(index),
                   [&](auto kernel) { for_each_target(targets.values(), out, kernel); });
}

IndexResult log_hash_search_batch(const SortedTable& table, const LogHashIndex& index,
                                  const TargetBatch& targets) {
  IndexResult result(targets.size());
  log_hash_search_batch(table, index, targets, result.span());
  return result;
}

IndexResult log_hash_search_batch(const SortedTable& table, const LogHashIndex& index,
                                  const TargetBatch& targets, ProbeLog& probes) {
  IndexResult result(targets.size());
  with_hash_kernel(table, index, log_bin_of(index), [&](auto kernel) {
    for_each_target(targets.values(), result.span(), probes, kernel);
  });
  return result;
}

// ---------------------------------------------------------------------------
// Exponent hash

int exponent_of(double x) noexcept {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  return static_cast<int>((bits >> 52) & 0x7FF) - 1023;
}

namespace {

struct ExpBin {
  index_t exp_min;
  index_t bin_count;

  index_t operator()(double x) const noexcept {
    return clamp_bin(static_cast<index_t>(exponent_of(x)) - exp_min, bin_count);
  }
};

ExpBin exp_bin_of(const ExpHashIndex& index) noexcept {
  return {index.exp_min, index.bin_count()};
}

}  // namespace

ExpHashIndex build_exp_hash_index(const SortedTable& table, InteriorSearch interior) {
  const PositiveRange range = positive_range(table);
  if (range.xmin_pos < std::numeric_limits<double>::min()) {
    throw ValidationError("exponent hash needs normal positive table values");
  }
  ExpHashIndex index;
  index.exp_min = exponent_of(range.xmin_pos);
  index.xmin_pos = range.xmin_pos;
  index.xmax = range.xmax;
  index.table_size = static_cast<index_t>(table.size());
  index.interior = interior;

  const index_t bin_count = exponent_of(range.xmax) - index.exp_min + 1;
  BinTables t = build_bins(table, bin_count, ExpBin{index.exp_min, bin_count});
  index.first_index = std::move(t.first_index);
  index.last_index = std::move(t.last_index);
  return index;
}

HashRange hash_range(const ExpHashIndex& index, double target) noexcept {
  const double hashed = std::min(std::max(target, index.xmin_pos), index.xmax);
  return range_for_bin(index.first_index.data(), index.last_index.data(),
                       exp_bin_of(index)(hashed));
}

void exp_hash_search_batch(const SortedTable& table, const ExpHashIndex& index,
                           const TargetBatch& targets, std::span<index_t> out) {
  detail::check_output(targets, out);
  with_hash_kernel(table, index, exp_bin_of(index),
                   [&](auto kernel) { for_each_target(targets.values(), out, kernel); });
}

IndexResult exp_hash_search_batch(const SortedTable& table, const ExpHashIndex& index,
                                  const TargetBatch& targets) {
  IndexResult result(targets.size());
  exp_hash_search_batch(table, index, targets, result.span());
  return result;
}

IndexResult exp_hash_search_batch(const SortedTable& table, const ExpHashIndex& index,
                                  const TargetBatch& targets, ProbeLog& probes) {
  IndexResult result(targets.size());
  with_hash_kernel(table, index, exp_bin_of(index), [&](auto kernel) {
    for_each_target(targets.values(), result.span(), probes, kernel);
  });
  return result;
}

}  // namespace lbsearch
