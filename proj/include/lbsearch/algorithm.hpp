#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "lbsearch/indexed.hpp"
#include "lbsearch/probe.hpp"
#include "lbsearch/search.hpp"
#include "lbsearch/types.hpp"

namespace lbsearch {

enum class Algorithm { kLinear, kBinary, kHuntLocate, kSkiplist, kLogHash, kExpHash };

/// Reference point for speedups: the stateless hunt-and-locate.
inline constexpr Algorithm kBaselineAlgorithm = Algorithm::kHuntLocate;

std::string_view to_string(Algorithm a) noexcept;
/// Names: linear, binary, hunt_locate, skiplist, log_hash, exp_hash.
Algorithm parse_algorithm(std::string_view name);
std::span<const Algorithm> all_algorithms() noexcept;

struct SearchOptions {
  index_t skip_factor = kDefaultSkipFactor;
  /// Log-hash bin count; 0 selects 2 * n.
  index_t hash_size = 0;
  InteriorSearch interior = InteriorSearch::kLinear;
};

/// An algorithm with its acceleration structure built for one table. Building
/// is the setup phase; search() is the query phase. The table must outlive
/// the PreparedSearch.
class PreparedSearch {
 public:
  static PreparedSearch prepare(Algorithm algorithm, const SortedTable& table,
                                const SearchOptions& options = {});

  Algorithm algorithm() const noexcept { return algorithm_; }

  void search(const TargetBatch& targets, std::span<index_t> out) const;
  IndexResult search(const TargetBatch& targets) const;
  IndexResult search(const TargetBatch& targets, ProbeLog& probes) const;

  /// Test hook: damages the acceleration structure so searches return wrong
  /// indices. Returns false for algorithms without one.
  bool corrupt_for_testing();

 private:
  using Index = std::variant<std::monostate, SkipIndex, LogHashIndex, ExpHashIndex>;

  PreparedSearch(Algorithm algorithm, const SortedTable& table, Index index)
      : algorithm_(algorithm), table_(table), index_(std::move(index)) {}

  Algorithm algorithm_;
  std::reference_wrapper<const SortedTable> table_;
  Index index_;
};

/// Position of the first differing element, or nullopt when equal.
std::optional<std::size_t> first_mismatch(const IndexResult& expected, const IndexResult& actual);

}  // namespace lbsearch
