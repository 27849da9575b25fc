#pragma once

#include <span>
#include <vector>

#include "lbsearch/probe.hpp"
#include "lbsearch/types.hpp"

namespace lbsearch {

// ---------------------------------------------------------------------------
// Skiplist

/// Every `skip`-th table value. With the default of 8 each entry covers one
/// 64-byte cache line of doubles.
struct SkipIndex {
  aligned_vector<double> skip_values;
  index_t skip = 8;
  index_t table_size = 0;
};

inline constexpr index_t kDefaultSkipFactor = 8;

/// Length is ceil(n / skip). Throws ValidationError when skip < 1.
SkipIndex build_skip_index(const SortedTable& table, index_t skip = kDefaultSkipFactor);

void skiplist_search_batch(const SortedTable& table, const SkipIndex& index,
                           const TargetBatch& targets, std::span<index_t> out);
IndexResult skiplist_search_batch(const SortedTable& table, const SkipIndex& index,
                                  const TargetBatch& targets);
IndexResult skiplist_search_batch(const SortedTable& table, const SkipIndex& index,
                                  const TargetBatch& targets, ProbeLog& probes);

// ---------------------------------------------------------------------------
// Hash indexes

/// Search used between the two table indices a hash bin resolves to.
enum class InteriorSearch { kLinear, kBinary };

/// Inclusive table range scanned for one target.
struct HashRange {
  index_t start;
  index_t end;
};

/// Logarithm hash: bins are floor(log_base(x)) shifted so that the smallest
/// positive table value lands in bin 0.
///
/// `first_index[i]` is the smallest table index hashing to bin i. An empty
/// bin takes max(first_index[i+1] - 1, 0), raised if needed to the entry of
/// the bin below it so the array stays non-decreasing. An empty last bin
/// keeps n-1.
/// `last_index[i]` is the largest table index whose bin is <= i (0 when no
/// such index exists), which bounds the interior search from above.
///
/// Non-positive table values are never hashed; they sort before every bin.
struct LogHashIndex {
  std::vector<index_t> first_index;
  std::vector<index_t> last_index;
  double base = 0.0;
  double log_base = 0.0;
  index_t offset = 0;
  double xmin_pos = 0.0;
  double xmax = 0.0;
  index_t table_size = 0;
  InteriorSearch interior = InteriorSearch::kLinear;

  index_t bin_count() const noexcept { return static_cast<index_t>(first_index.size()); }
};

struct LogHashOptions {
  /// Number of bins; 0 selects 2 * n.
  index_t hash_size = 0;
  InteriorSearch interior = InteriorSearch::kLinear;
};

/// Base b with log_b(xmax) - log_b(xmin_pos) == hash_size.
/// Throws ValidationError unless 0 < xmin_pos < xmax and hash_size >= 1.
double compute_hash_base(double xmin_pos, double xmax, index_t hash_size);

/// floor(log_b(x)) + offset, with offset = -floor(log_b(xmin_pos)). x > 0.
index_t log_hash(double x, double base, index_t offset) noexcept;

/// Unclamped bin of x under a built index. Equals hash_size for x == xmax in
/// exact arithmetic, which is why builds and queries clamp.
index_t raw_log_bin(const LogHashIndex& index, double x) noexcept;

/// Throws ValidationError when the table has fewer than two positive values.
LogHashIndex build_log_hash_index(const SortedTable& table, const LogHashOptions& options = {});

/// Interior search range the index resolves `target` to, before bounds
/// correction. Meaningful for targets in [xmin_pos, xmax].
HashRange hash_range(const LogHashIndex& index, double target) noexcept;

void log_hash_search_batch(const SortedTable& table, const LogHashIndex& index,
                           const TargetBatch& targets, std::span<index_t> out);
IndexResult log_hash_search_batch(const SortedTable& table, const LogHashIndex& index,
                                  const TargetBatch& targets);
IndexResult log_hash_search_batch(const SortedTable& table, const LogHashIndex& index,
                                  const TargetBatch& targets, ProbeLog& probes);

/// Unbiased binary64 exponent read from the bit pattern; floor(log2(x)) for
/// positive normal x.
int exponent_of(double x) noexcept;

/// Exponent hash: one bin per binary64 exponent spanned by the positive
/// table values. Same table layout as LogHashIndex.
struct ExpHashIndex {
  std::vector<index_t> first_index;
  std::vector<index_t> last_index;
  int exp_min = 0;
  double xmin_pos = 0.0;
  double xmax = 0.0;
  index_t table_size = 0;
  InteriorSearch interior = InteriorSearch::kLinear;

  index_t bin_count() const noexcept { return static_cast<index_t>(first_index.size()); }
};

/// Throws ValidationError when the table has fewer than two positive values
/// or its smallest positive value is subnormal.
ExpHashIndex build_exp_hash_index(const SortedTable& table,
                                  InteriorSearch interior = InteriorSearch::kLinear);

HashRange hash_range(const ExpHashIndex& index, double target) noexcept;

void exp_hash_search_batch(const SortedTable& table, const ExpHashIndex& index,
                           const TargetBatch& targets, std::span<index_t> out);
IndexResult exp_hash_search_batch(const SortedTable& table, const ExpHashIndex& index,
                                  const TargetBatch& targets);
IndexResult exp_hash_search_batch(const SortedTable& table, const ExpHashIndex& index,
                                  const TargetBatch& targets, ProbeLog& probes);

}  // namespace lbsearch
