#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "lbsearch/types.hpp"

namespace lbsearch {

/// How target values are drawn.
///  - kUniform: uniform over decades, i.e. log10(y) ~ U(log10 lo, log10 hi).
///  - kLinear: y ~ U(lo, hi).
///  - kGaussian: log10(y) ~ N(log10 of the table's geometric center, 1).
enum class Distribution { kUniform, kLinear, kGaussian };

std::string_view to_string(Distribution d) noexcept;
/// Accepts "uniform", "linear" and "gaussian". Throws ValidationError.
Distribution parse_distribution(std::string_view name);

/// Parameters for synthetic tables and target batches. The defaults give the
/// reference experiment: a 110-value density-like table spanning
/// [3e-6, 5.4e4] and five million targets over [1e-10, 1e10].
struct GenSpec {
  index_t n = 110;
  double xmin_pos = 3e-6;
  double xmax = 5.4e4;
  bool include_zero_head = false;
  /// Multiplicative jitter as a fraction of the local log spacing.
  double jitter = 0.1;
  index_t m = 5'000'000;
  double target_lo = 1e-10;
  double target_hi = 1e10;
  Distribution distribution = Distribution::kUniform;
  std::uint64_t seed = 20200601;

  /// Throws ValidationError on any violated constraint.
  void validate() const;
};

SortedTable gen_log_table(const GenSpec& spec);
TargetBatch gen_targets(const GenSpec& spec);

// Text files: UTF-8, one value per line, '#' starts a comment line, values
// written with 17 significant digits so they read back bit-exact.

void save_table(const std::filesystem::path& path, const SortedTable& table);
/// Throws IoError, ParseError (with line number) or ValidationError (unsorted).
SortedTable load_table(const std::filesystem::path& path);
void save_targets(const std::filesystem::path& path, const TargetBatch& targets);
TargetBatch load_targets(const std::filesystem::path& path);

}  // namespace lbsearch
