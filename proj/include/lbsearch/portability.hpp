#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbsearch/bench.hpp"

namespace lbsearch {

/// Harmonic mean of per-platform efficiencies; 0 when any platform is
/// unsupported (nullopt). Throws ValidationError on an empty set.
double pennycook_score(std::span<const std::optional<double>> efficiencies);

struct AlgorithmPortability {
  std::string algorithm;
  /// Application efficiency per platform, in platform order: fastest time
  /// on that platform divided by this algorithm's time there.
  std::vector<std::optional<double>> efficiency;
  double pp = 0.0;
};

struct PortabilityReport {
  std::int64_t m = 0;
  TimingMode mode = TimingMode::kTotal;
  std::vector<std::string> platforms;
  std::vector<AlgorithmPortability> algorithms;
};

/// Performance portability of every algorithm present in `records` at batch
/// size m over `platforms`. Throws ValidationError for an empty platform set
/// or when no record has batch size m.
PortabilityReport pennycook(std::span<const BenchRecord> records,
                            std::span<const std::string> platforms, std::int64_t m,
                            TimingMode mode = TimingMode::kTotal);

}  // namespace lbsearch
