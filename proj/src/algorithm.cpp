#include "lbsearch/algorithm.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "lbsearch/error.hpp"

namespace lbsearch {

namespace {

constexpr std::array kAlgorithms{Algorithm::kLinear,   Algorithm::kBinary,
                                 Algorithm::kHuntLocate, Algorithm::kSkiplist,
                                 Algorithm::kLogHash,  Algorithm::kExpHash};

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kLinear: return "linear";
    case Algorithm::kBinary: return "binary";
    case Algorithm::kHuntLocate: return "hunt_locate";
    case Algorithm::kSkiplist: return "skiplist";
    case Algorithm::kLogHash: return "log_hash";
    case Algorithm::kExpHash: return "exp_hash";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAlgorithms) {
    if (to_string(a) == name) return a;
  }
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

std::span<const Algorithm> all_algorithms() noexcept { return kAlgorithms; }

PreparedSearch PreparedSearch::prepare(Algorithm algorithm, const SortedTable& table,
                                       const SearchOptions& options) {
  switch (algorithm) {
    case Algorithm::kSkiplist:
      return {algorithm, table, build_skip_index(table, options.skip_factor)};
    case Algorithm::kLogHash:
      return {algorithm, table,
              build_log_hash_index(table, {options.hash_size, options.interior})};
    case Algorithm::kExpHash:
      return {algorithm, table, build_exp_hash_index(table, options.interior)};
    default:
      return {algorithm, table, std::monostate{}};
  }
}

void PreparedSearch::search(const TargetBatch& targets, std::span<index_t> out) const {
  const SortedTable& table = table_.get();
  switch (algorithm_) {
    case Algorithm::kLinear: return linear_search_batch(table, targets, out);
    case Algorithm::kBinary: return binary_search_branchless_batch(table, targets, out);
    case Algorithm::kHuntLocate: return hunt_locate_batch(table, targets, out);
    case Algorithm::kSkiplist:
      return skiplist_search_batch(table, std::get<SkipIndex>(index_), targets, out);
    case Algorithm::kLogHash:
      return log_hash_search_batch(table, std::get<LogHashIndex>(index_), targets, out);
    case Algorithm::kExpHash:
      return exp_hash_search_batch(table, std::get<ExpHashIndex>(index_), targets, out);
  }
}

IndexResult PreparedSearch::search(const TargetBatch& targets) const {
  IndexResult result(targets.size());
  search(targets, result.span());
  return result;
}

IndexResult PreparedSearch::search(const TargetBatch& targets, ProbeLog& probes) const {
  const SortedTable& table = table_.get();
  switch (algorithm_) {
    case Algorithm::kLinear: return linear_search_batch(table, targets, probes);
    case Algorithm::kBinary: return binary_search_branchless_batch(table, targets, probes);
    case Algorithm::kHuntLocate: return hunt_locate_batch(table, targets, probes);
    case Algorithm::kSkiplist:
      return skiplist_search_batch(table, std::get<SkipIndex>(index_), targets, probes);
    case Algorithm::kLogHash:
      return log_hash_search_batch(table, std::get<LogHashIndex>(index_), targets, probes);
    case Algorithm::kExpHash:
      return exp_hash_search_batch(table, std::get<ExpHashIndex>(index_), targets, probes);
  }
  return {};
}

namespace {

template <typename HashIndex>
void collapse_ranges(HashIndex& index) {
  for (std::size_t i = 0; i < index.last_index.size(); ++i) {
    index.last_index[i] = std::max<index_t>(index.first_index[i] - 1, 0);
  }
}

}  // namespace

bool PreparedSearch::corrupt_for_testing() {
  if (auto* skip = std::get_if<SkipIndex>(&index_)) {
    for (double& v : skip->skip_values) v = table_.get().front();
    return true;
  }
  if (auto* log = std::get_if<LogHashIndex>(&index_)) {
    collapse_ranges(*log);
    return true;
  }
  if (auto* exp = std::get_if<ExpHashIndex>(&index_)) {
    collapse_ranges(*exp);
    return true;
  }
  return false;
}

std::optional<std::size_t> first_mismatch(const IndexResult& expected, const IndexResult& actual) {
  const std::size_t common = std::min(expected.size(), actual.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (expected[i] != actual[i]) return i;
  }
  if (expected.size() != actual.size()) return common;
  return std::nullopt;
}

}  // namespace lbsearch
