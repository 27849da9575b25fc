#include "lbsearch/bench.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <string>
#include <utility>

#include "lbsearch/error.hpp"

namespace lbsearch {

std::string_view to_string(TimingMode mode) noexcept {
  return mode == TimingMode::kTotal ? "total" : "split";
}

TimingMode parse_timing_mode(std::string_view name) {
  if (name == "total") return TimingMode::kTotal;
  if (name == "split") return TimingMode::kSplit;
  throw ValidationError("unknown timing mode '" + std::string(name) + "' (expected total or split)");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double, std::nano>(to - from).count();
}

bool has_index(Algorithm a) {
  return a == Algorithm::kSkiplist || a == Algorithm::kLogHash || a == Algorithm::kExpHash;
}

void verify_run(Algorithm algorithm, const TargetBatch& targets, const IndexResult& expected,
                const IndexResult& actual) {
  if (const auto bad = first_mismatch(expected, actual)) {
    const std::size_t i = *bad;
    throw VerificationError(std::string(to_string(algorithm)) + ": target " + std::to_string(i) +
                                " (y=" + std::to_string(targets[i]) + ") returned " +
                                std::to_string(actual[i]) + ", oracle says " +
                                std::to_string(expected[i]),
                            i);
  }
}

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

}  // namespace

BenchRecord run_bench(Algorithm algorithm, const SortedTable& table, const TargetBatch& targets,
                      const BenchOptions& options, const IndexResult* expected) {
  if (options.trials < 1) throw ValidationError("trials must be >= 1");
  IndexResult oracle;
  if (expected == nullptr) {
    oracle = lower_bound_oracle_batch(table, targets);
    expected = &oracle;
  }

  IndexResult out(targets.size());
  {
    const auto warm = PreparedSearch::prepare(algorithm, table, options.search);
    warm.search(targets, out.span());
    verify_run(algorithm, targets, *expected, out);
  }

  std::vector<double> setup(static_cast<std::size_t>(options.trials), 0.0);
  std::vector<double> query(static_cast<std::size_t>(options.trials), 0.0);
  for (std::size_t t = 0; t < setup.size(); ++t) {
    const auto t0 = Clock::now();
    const auto prepared = PreparedSearch::prepare(algorithm, table, options.search);
    const auto t1 = Clock::now();
    prepared.search(targets, out.span());
    const auto t2 = Clock::now();
    if (has_index(algorithm)) setup[t] = elapsed_ns(t0, t1);
    query[t] = elapsed_ns(t1, t2);
    verify_run(algorithm, targets, *expected, out);
  }

  const Moments s = moments(setup);
  const Moments q = moments(query);
  BenchRecord record;
  record.algorithm = std::string(to_string(algorithm));
  record.platform_label = options.platform_label;
  record.n = static_cast<std::int64_t>(table.size());
  record.m = static_cast<std::int64_t>(targets.size());
  record.trials = options.trials;
  record.setup_ns = s.mean;
  record.query_ns = q.mean;
  record.query_ns_std = q.stddev;
  record.total_ns = record.setup_ns + record.query_ns;
  record.timestamp = utc_timestamp();
  record.seed = options.seed;
  return record;
}

std::vector<BenchRecord> sweep_batch_sizes(std::span<const Algorithm> algorithms,
                                           const SortedTable& table,
                                           std::span<const std::int64_t> sizes,
                                           const BenchOptions& options, GenSpec targets) {
  if (sizes.empty()) throw ValidationError("sweep needs at least one batch size");
  if (algorithms.empty()) throw ValidationError("sweep needs at least one algorithm");
  std::vector<BenchRecord> records;
  records.reserve(sizes.size() * algorithms.size());
  BenchOptions per_size = options;
  per_size.seed = targets.seed;
  for (const std::int64_t m : sizes) {
    targets.m = m;
    const TargetBatch batch = gen_targets(targets);
    const IndexResult expected = lower_bound_oracle_batch(table, batch);
    for (const Algorithm a : algorithms) {
      records.push_back(run_bench(a, table, batch, per_size, &expected));
    }
  }
  return records;
}

std::vector<SpeedupRow> speedup_relative(std::span<const BenchRecord> records,
                                         std::string_view baseline_algorithm, TimingMode mode) {
  std::map<std::pair<std::string, std::int64_t>, double> baseline;
  for (const BenchRecord& r : records) {
    if (r.algorithm == baseline_algorithm) baseline[{r.platform_label, r.m}] = r.time_ns(mode);
  }
  std::vector<SpeedupRow> rows;
  rows.reserve(records.size());
  for (const BenchRecord& r : records) {
    const auto it = baseline.find({r.platform_label, r.m});
    if (it == baseline.end()) {
      throw ValidationError("no " + std::string(baseline_algorithm) + " baseline for platform '" +
                            r.platform_label + "' at m=" + std::to_string(r.m));
    }
    rows.push_back({r.algorithm, r.platform_label, r.m, it->second / r.time_ns(mode)});
  }
  return rows;
}

}  // namespace lbsearch
