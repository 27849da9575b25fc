#pragma once

#include <cstdint>
#include <vector>

namespace lbsearch {

/// Per-query count of data-array reads, filled by the instrumented batch
/// overloads. Reads of acceleration structures (skip values, hash bins) and
/// of the cached table endpoints are not counted.
struct ProbeLog {
  std::vector<std::uint32_t> per_query;

  double mean() const noexcept;
  std::uint32_t max() const noexcept;
};

}  // namespace lbsearch
