#include "lbsearch/types.hpp"

#include <cmath>
#include <string>

#include "lbsearch/error.hpp"

namespace lbsearch {
namespace {

void validate_table(std::span<const double> values) {
  if (values.size() < 2) {
    throw ValidationError("sorted table needs at least 2 values, got " +
                          std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("sorted table value " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw ValidationError("sorted table is not non-decreasing at index " + std::to_string(i));
    }
  }
}

void validate_targets(std::span<const double> values) {
  if (values.empty()) throw ValidationError("target batch must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("target " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

SortedTable::SortedTable(std::span<const double> values) : values_(values.begin(), values.end()) {
  validate_table(values_);
}

SortedTable::SortedTable(std::initializer_list<double> values)
    : SortedTable(std::span<const double>(values.begin(), values.size())) {}

TargetBatch::TargetBatch(std::span<const double> values) : values_(values.begin(), values.end()) {
  validate_targets(values_);
}

TargetBatch::TargetBatch(std::initializer_list<double> values)
    : TargetBatch(std::span<const double>(values.begin(), values.size())) {}

}  // namespace lbsearch
