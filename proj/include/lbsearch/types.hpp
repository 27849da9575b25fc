#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "lbsearch/aligned.hpp"

namespace lbsearch {

/// Index into a SortedTable. Signed and 64 bits wide so that index lanes
/// line up with double lanes in the vectorized batch loops.
using index_t = std::int64_t;

/// The small, ascending data array being searched. Construction validates
/// n >= 2, finiteness and non-decreasing order.
class SortedTable {
 public:
  explicit SortedTable(std::span<const double> values);
  SortedTable(std::initializer_list<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }
  index_t last_index() const noexcept { return static_cast<index_t>(values_.size()) - 1; }

  bool operator==(const SortedTable& other) const noexcept { return values_ == other.values_; }

 private:
  aligned_vector<double> values_;
};

/// The large, unsorted batch of query values. NaN and infinities are
/// rejected here so the kernels never have to handle them.
class TargetBatch {
 public:
  explicit TargetBatch(std::span<const double> values);
  TargetBatch(std::initializer_list<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool operator==(const TargetBatch& other) const noexcept { return values_ == other.values_; }

 private:
  aligned_vector<double> values_;
};

/// One lower-bound index per target.
struct IndexResult {
  aligned_vector<index_t> indices;

  IndexResult() = default;
  explicit IndexResult(std::size_t m) : indices(m, 0) {}

  std::size_t size() const noexcept { return indices.size(); }
  index_t operator[](std::size_t i) const noexcept { return indices[i]; }
  std::span<index_t> span() noexcept { return indices; }
  std::span<const index_t> span() const noexcept { return indices; }

  bool operator==(const IndexResult& other) const noexcept { return indices == other.indices; }
};

}  // namespace lbsearch
