#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbsearch/algorithm.hpp"
#include "lbsearch/datagen.hpp"
#include "lbsearch/types.hpp"

namespace lbsearch {

/// Which time a report compares: setup + query (the default, since index
/// build cost decides the small-batch ordering) or query alone.
enum class TimingMode { kTotal, kSplit };

std::string_view to_string(TimingMode mode) noexcept;
/// Accepts "total" and "split". Throws ValidationError.
TimingMode parse_timing_mode(std::string_view name);

/// One timed experiment. Times are means over `trials` in nanoseconds and
/// total_ns == setup_ns + query_ns.
struct BenchRecord {
  std::string algorithm;
  std::string platform_label;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t trials = 0;
  double setup_ns = 0.0;
  double query_ns = 0.0;
  double query_ns_std = 0.0;
  double total_ns = 0.0;
  std::string timestamp;
  std::uint64_t seed = 0;

  /// total_ns or query_ns depending on the mode.
  double time_ns(TimingMode mode) const noexcept {
    return mode == TimingMode::kTotal ? total_ns : query_ns;
  }

  bool operator==(const BenchRecord&) const = default;
};

struct BenchOptions {
  std::int64_t trials = 20;
  SearchOptions search;
  std::string platform_label = "unlabeled";
  /// Recorded for provenance; run_bench does not draw random numbers.
  std::uint64_t seed = 0;
};

/// Times `algorithm` on one thread: one untimed warm-up, then `trials` runs
/// with setup and query timed separately. Every run is compared with
/// `expected` (the oracle answer, computed here when null) and a mismatch
/// throws VerificationError naming the first differing target.
BenchRecord run_bench(Algorithm algorithm, const SortedTable& table, const TargetBatch& targets,
                      const BenchOptions& options, const IndexResult* expected = nullptr);

/// One record per (algorithm, m). Targets for each m are regenerated from
/// `targets` with m replaced; the table is shared.
std::vector<BenchRecord> sweep_batch_sizes(std::span<const Algorithm> algorithms,
                                           const SortedTable& table,
                                           std::span<const std::int64_t> sizes,
                                           const BenchOptions& options, GenSpec targets);

struct SpeedupRow {
  std::string algorithm;
  std::string platform_label;
  std::int64_t m = 0;
  double ratio = 0.0;
};

/// baseline time / algorithm time for every record, matched on
/// (platform_label, m). Throws ValidationError when a baseline is missing.
std::vector<SpeedupRow> speedup_relative(std::span<const BenchRecord> records,
                                         std::string_view baseline_algorithm,
                                         TimingMode mode = TimingMode::kTotal);

/// UTC time as ISO 8601, e.g. 2024-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace lbsearch
