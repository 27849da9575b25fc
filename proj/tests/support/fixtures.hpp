// Random tables and target batches shared by the property and acceptance
// tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lbsearch/types.hpp"

namespace lbsearch::testing {

struct TableShape {
  int min_n = 2;
  int max_n = 512;
  double duplicate_rate = 0.1;
  double zero_head_rate = 0.25;
};

/// Log-distributed positive values over a random span (0.5 to 20 decades),
/// with runs of duplicates and sometimes a 0.0 head (occasionally preceded
/// by negative values). Always has at least two
/// distinct positive values so every algorithm, hash indexes included, applies.
inline std::vector<double> random_table_values(std::mt19937_64& rng, const TableShape& shape = {}) {
  std::uniform_int_distribution<int> size(shape.min_n, shape.max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = size(rng);
  const bool zero_head = n >= 3 && unit(rng) < shape.zero_head_rate;
  // Occasionally a longer non-positive head: negatives before the zero.
  const int negatives = zero_head && n >= 5 && unit(rng) < 0.3 ? 1 + (unit(rng) < 0.5) : 0;
  const int positives = n - (zero_head ? 1 : 0) - negatives;

  const double lo = -12.0 + 20.0 * unit(rng);
  const double width = 0.5 + 19.5 * unit(rng);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < positives; ++i) v.push_back(std::pow(10.0, lo + width * unit(rng)));
  std::sort(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (unit(rng) < shape.duplicate_rate) v[i] = v[i - 1];
  }
  if (v.front() == v.back()) v.back() = v.front() * 2.0;
  if (zero_head) v.insert(v.begin(), 0.0);
  for (int i = 0; i < negatives; ++i) v.insert(v.begin(), -std::pow(10.0, lo + width * unit(rng)));
  std::sort(v.begin(), v.end());
  return v;
}

inline SortedTable random_table(std::mt19937_64& rng, const TableShape& shape = {}) {
  return SortedTable(random_table_values(rng, shape));
}

/// About half in range (exact table values and values between them) and
/// half outside (below the head, including zero and negatives, or above the
/// tail).
inline std::vector<double> mixed_targets(std::mt19937_64& rng, const SortedTable& table,
                                         std::size_t m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  const double head = table.front();
  const double tail = table.back();
  const double lo = std::log10(std::max(head, tail * 1e-30));
  const double hi = std::log10(tail);
  std::vector<double> y(m);
  for (double& v : y) {
    const double u = unit(rng);
    if (u < 0.25) {
      v = table[pick(rng)];
    } else if (u < 0.5) {
      v = std::pow(10.0, lo + (hi - lo) * unit(rng));
      v = std::clamp(v, head, tail);
    } else if (u < 0.75) {
      const double r = unit(rng);
      if (r < 0.1) {
        v = -1.0 - unit(rng);
      } else if (r < 0.2) {
        v = 0.0;
      } else {
        v = head > 0.0 ? head * std::pow(10.0, -5.0 * unit(rng) - 1e-9) : head - 1.0 - unit(rng);
      }
    } else {
      v = tail * std::pow(10.0, 5.0 * unit(rng) + 1e-9);
    }
  }
  return y;
}

inline TargetBatch mixed_batch(std::mt19937_64& rng, const SortedTable& table, std::size_t m) {
  return TargetBatch(mixed_targets(rng, table, m));
}

}  // namespace lbsearch::testing
