// lbsearch: generate tables and targets, verify every search algorithm
// against the lower-bound oracle, benchmark, sweep batch sizes and compute
// performance portability over saved results.

#include <fmt/core.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lbsearch/algorithm.hpp"
#include "lbsearch/bench.hpp"
#include "lbsearch/datagen.hpp"
#include "lbsearch/error.hpp"
#include "lbsearch/portability.hpp"
#include "lbsearch/records.hpp"
#include "lbsearch/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace lbsearch::cli {
namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kMismatch = 3,
  kIo = 4,
};

constexpr const char* kEnvPrefix = "LBSEARCH_";

struct Config {
  GenSpec gen;
  std::string table_path;
  std::string targets_path;
  std::vector<std::string> algorithms;
  std::int64_t trials = 20;
  SearchOptions search;
  std::string interior = "linear";
  std::string timing = "total";
  std::string distribution = "uniform";
  std::string platform_label = "unlabeled";
  std::string out;
  std::vector<std::string> sizes{"1e2", "1e3", "1e4", "1e5", "1e6", "5e6"};
  std::vector<std::string> inputs;
  std::vector<std::string> platforms;
  std::optional<std::int64_t> pennycook_m;
  std::string baseline = "hunt_locate";
  bool corrupt_index = false;
};

std::string env_name(const std::string& flag) {
  std::string name = kEnvPrefix;
  for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return name;
}

// Flags shared by several subcommands. Every flag can also come from an
// LBSEARCH_<FLAG> environment variable or the --config file.
template <typename T>
CLI::Option* add_flag(CLI::App* app, const std::string& flag, T& target, const std::string& help) {
  return app->add_option("--" + flag, target, help)->envname(env_name(flag))->capture_default_str();
}

void add_table_options(CLI::App* app, Config& c) {
  add_flag(app, "n", c.gen.n, "Table size");
  add_flag(app, "xmin", c.gen.xmin_pos, "Smallest positive table value");
  add_flag(app, "xmax", c.gen.xmax, "Largest table value");
  app->add_flag("--zero-head", c.gen.include_zero_head, "Prepend a 0.0 entry to the table")
      ->envname(env_name("zero-head"));
  add_flag(app, "jitter", c.gen.jitter, "Jitter as a fraction of the log spacing");
  add_flag(app, "seed", c.gen.seed, "Random seed");
}

void add_target_options(CLI::App* app, Config& c) {
  add_flag(app, "m", c.gen.m, "Target batch size");
  add_flag(app, "lo", c.gen.target_lo, "Lowest target value");
  add_flag(app, "hi", c.gen.target_hi, "Highest target value");
  add_flag(app, "dist", c.distribution, "Target distribution: uniform (over decades), linear, gaussian")
      ->check(CLI::IsMember({"uniform", "linear", "gaussian"}));
}

void add_input_options(CLI::App* app, Config& c) {
  add_flag(app, "table", c.table_path, "Table file (generated from --n/--seed when omitted)");
  add_flag(app, "targets", c.targets_path, "Targets file (generated from --m/--seed when omitted)");
}

void add_search_options(CLI::App* app, Config& c) {
  app->add_option("--algo", c.algorithms,
                  "Algorithm (repeatable or comma separated); default: all")
      ->delimiter(',')
      ->envname(env_name("algo"));
  add_flag(app, "skip-factor", c.search.skip_factor, "Skiplist skip factor");
  add_flag(app, "hash-size", c.search.hash_size, "Log-hash bin count (0 = 2n)");
  add_flag(app, "interior", c.interior, "Search inside a hash bin: linear or binary")
      ->check(CLI::IsMember({"linear", "binary"}));
}

void add_bench_options(CLI::App* app, Config& c) {
  add_flag(app, "trials", c.trials, "Timed trials per measurement");
  add_flag(app, "timing", c.timing, "Time compared in reports: total (setup + query) or split")
      ->check(CLI::IsMember({"total", "split"}));
  add_flag(app, "platform-label", c.platform_label, "Free-form platform label, e.g. skylake/gcc/vec");
  add_flag(app, "baseline", c.baseline, "Baseline algorithm for speedups");
}

json resolved_config(const std::string& command, const Config& c) {
  return json{{"command", command},
              {"n", c.gen.n},
              {"m", c.gen.m},
              {"xmin", c.gen.xmin_pos},
              {"xmax", c.gen.xmax},
              {"zero_head", c.gen.include_zero_head},
              {"jitter", c.gen.jitter},
              {"lo", c.gen.target_lo},
              {"hi", c.gen.target_hi},
              {"dist", c.distribution},
              {"seed", c.gen.seed},
              {"table", c.table_path},
              {"targets", c.targets_path},
              {"algo", c.algorithms},
              {"trials", c.trials},
              {"skip_factor", c.search.skip_factor},
              {"hash_size", c.search.hash_size},
              {"interior", c.interior},
              {"timing", c.timing},
              {"platform_label", c.platform_label},
              {"baseline", c.baseline}};
}

void finalize(Config& c) {
  c.gen.distribution = parse_distribution(c.distribution);
  c.search.interior = c.interior == "binary" ? InteriorSearch::kBinary : InteriorSearch::kLinear;
  c.gen.validate();
}

std::vector<Algorithm> selected_algorithms(const Config& c, bool was_given) {
  if (!was_given) return {all_algorithms().begin(), all_algorithms().end()};
  std::vector<Algorithm> out;
  for (const auto& name : c.algorithms) {
    if (name.empty()) continue;
    const Algorithm a = parse_algorithm(name);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw CLI::ValidationError("--algo", "empty algorithm list");
  return out;
}

SortedTable load_or_generate_table(const Config& c) {
  return c.table_path.empty() ? gen_log_table(c.gen) : load_table(c.table_path);
}

TargetBatch load_or_generate_targets(const Config& c) {
  return c.targets_path.empty() ? gen_targets(c.gen) : load_targets(c.targets_path);
}

std::int64_t parse_size(const std::string& text) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(v >= 1) || v != std::floor(v) ||
      v > 1e12) {
    throw ValidationError("bad batch size '" + text + "'");
  }
  return static_cast<std::int64_t>(v);
}

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  fs::path p = base;
  p.replace_extension();
  return p.string() + suffix;
}

// ---------------------------------------------------------------------------
// Console output

void print_records(const std::vector<BenchRecord>& records, const std::string& baseline,
                   TimingMode mode) {
  std::vector<SpeedupRow> speedups;
  try {
    speedups = speedup_relative(records, baseline, mode);
  } catch (const ValidationError&) {
    // No baseline in this run: show times only.
  }
  fmt::print("{:<12} {:>10} {:>14} {:>14} {:>14} {:>9}\n", "algorithm", "m", "setup_ns",
             "query_ns", "total_ns", "speedup");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string flag = r.algorithm == baseline ? " (baseline)" : "";
    if (speedups.empty()) {
      fmt::print("{:<12} {:>10} {:>14.0f} {:>14.0f} {:>14.0f} {:>9}{}\n", r.algorithm, r.m,
                 r.setup_ns, r.query_ns, r.total_ns, "-", flag);
    } else {
      fmt::print("{:<12} {:>10} {:>14.0f} {:>14.0f} {:>14.0f} {:>8.2f}x{}\n", r.algorithm, r.m,
                 r.setup_ns, r.query_ns, r.total_ns, speedups[i].ratio, flag);
    }
  }
}

void write_results(const Config& c, const std::string& command,
                   const std::vector<BenchRecord>& records, TimingMode mode) {
  const fs::path jsonl = c.out;
  write_jsonl(jsonl, records, resolved_config(command, c));
  write_csv(with_suffix(jsonl, ".csv"), records);
  fmt::print("wrote {} and {}\n", jsonl.string(), with_suffix(jsonl, ".csv").string());

  std::vector<SpeedupRow> speedups;
  try {
    speedups = speedup_relative(records, c.baseline, mode);
  } catch (const ValidationError& e) {
    fmt::print(stderr, "speedup table skipped: {}\n", e.what());
    return;
  }
  const fs::path speedup_path = with_suffix(jsonl, ".speedup.csv");
  std::ofstream out(speedup_path);
  if (!out) throw IoError("cannot open '" + speedup_path.string() + "' for writing");
  out << "algorithm,platform_label,m,baseline,timing,speedup\n";
  for (const auto& s : speedups) {
    out << s.algorithm << ',' << s.platform_label << ',' << s.m << ',' << c.baseline << ','
        << to_string(mode) << ',' << format_double(s.ratio) << '\n';
  }
  fmt::print("wrote {}\n", speedup_path.string());
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_gen_table(Config& c) {
  finalize(c);
  const SortedTable table = gen_log_table(c.gen);
  save_table(c.out, table);
  fmt::print("wrote {} values to {}\n", table.size(), c.out);
  return kOk;
}

int cmd_gen_targets(Config& c) {
  finalize(c);
  const TargetBatch targets = gen_targets(c.gen);
  save_targets(c.out, targets);
  fmt::print("wrote {} targets to {}\n", targets.size(), c.out);
  return kOk;
}

int cmd_verify(Config& c, bool algo_given) {
  finalize(c);
  const auto algorithms = selected_algorithms(c, algo_given);
  const SortedTable table = load_or_generate_table(c);
  const TargetBatch targets = load_or_generate_targets(c);
  const IndexResult expected = lower_bound_oracle_batch(table, targets);

  int failures = 0;
  for (const Algorithm a : algorithms) {
    auto prepared = PreparedSearch::prepare(a, table, c.search);
    if (c.corrupt_index) prepared.corrupt_for_testing();
    const IndexResult got = prepared.search(targets);
    if (const auto bad = first_mismatch(expected, got)) {
      ++failures;
      fmt::print("FAIL {:<12} target {} (y={:.17g}): got {}, oracle {}\n", to_string(a), *bad,
                 targets[*bad], got[*bad], expected[*bad]);
    } else {
      fmt::print("PASS {:<12} {} targets\n", to_string(a), targets.size());
    }
  }
  fmt::print("{} of {} algorithms match the oracle (n={}, m={})\n",
             algorithms.size() - static_cast<std::size_t>(failures), algorithms.size(),
             table.size(), targets.size());
  return failures == 0 ? kOk : kMismatch;
}

BenchOptions bench_options(const Config& c) {
  BenchOptions options;
  options.trials = c.trials;
  options.search = c.search;
  options.platform_label = c.platform_label;
  options.seed = c.gen.seed;
  return options;
}

int cmd_bench(Config& c, bool algo_given) {
  finalize(c);
  const auto algorithms = selected_algorithms(c, algo_given);
  const TimingMode mode = parse_timing_mode(c.timing);
  const SortedTable table = load_or_generate_table(c);
  const TargetBatch targets = load_or_generate_targets(c);
  const IndexResult expected = lower_bound_oracle_batch(table, targets);
  const BenchOptions options = bench_options(c);

  std::vector<BenchRecord> records;
  for (const Algorithm a : algorithms) {
    records.push_back(run_bench(a, table, targets, options, &expected));
  }
  print_records(records, c.baseline, mode);
  write_results(c, "bench", records, mode);
  return kOk;
}

int cmd_sweep(Config& c, bool algo_given) {
  finalize(c);
  const auto algorithms = selected_algorithms(c, algo_given);
  const TimingMode mode = parse_timing_mode(c.timing);
  std::vector<std::int64_t> sizes;
  for (const auto& s : c.sizes) sizes.push_back(parse_size(s));
  const SortedTable table = load_or_generate_table(c);

  const auto records = sweep_batch_sizes(algorithms, table, sizes, bench_options(c), c.gen);
  print_records(records, c.baseline, mode);
  write_results(c, "sweep", records, mode);
  return kOk;
}

std::vector<BenchRecord> read_any(const std::string& path) {
  return fs::path(path).extension() == ".csv" ? read_csv(fs::path(path))
                                              : read_jsonl(fs::path(path));
}

int cmd_pennycook(Config& c) {
  const TimingMode mode = parse_timing_mode(c.timing);
  std::vector<BenchRecord> records;
  for (const auto& path : c.inputs) {
    auto more = read_any(path);
    records.insert(records.end(), more.begin(), more.end());
  }
  if (records.empty()) throw ValidationError("no records in the input files");

  std::vector<std::string> platforms = c.platforms;
  if (platforms.empty()) {
    for (const auto& r : records) {
      if (std::find(platforms.begin(), platforms.end(), r.platform_label) == platforms.end()) {
        platforms.push_back(r.platform_label);
      }
    }
  }
  std::set<std::int64_t> sizes;
  if (c.pennycook_m) {
    sizes.insert(*c.pennycook_m);
  } else {
    for (const auto& r : records) sizes.insert(r.m);
  }

  std::vector<PortabilityReport> reports;
  for (const std::int64_t m : sizes) reports.push_back(pennycook(records, platforms, m, mode));

  fmt::print("# e_i = fastest {} time on platform i / algorithm time there; PP = harmonic mean, "
             "0 if unsupported\n",
             to_string(mode));
  fmt::print("# platforms: {}\n", fmt::join(platforms, ", "));
  for (const auto& report : reports) {
    for (const auto& row : report.algorithms) {
      std::vector<std::string> effs;
      for (const auto& e : row.efficiency) effs.push_back(e ? fmt::format("{:.3f}", *e) : "-");
      fmt::print("m={:<10} {:<12} PP={:.4f}  e=[{}]{}\n", report.m, row.algorithm, row.pp,
                 fmt::join(effs, ", "), row.pp == 0.0 ? "  (missing platform coverage)" : "");
    }
  }

  if (!c.out.empty()) {
    std::ofstream out(c.out);
    if (!out) throw IoError("cannot open '" + c.out + "' for writing");
    out << "algorithm,m,timing,pp";
    for (const auto& p : platforms) out << ",e:" << p;
    out << '\n';
    for (const auto& report : reports) {
      for (const auto& row : report.algorithms) {
        out << row.algorithm << ',' << report.m << ',' << to_string(mode) << ','
            << format_double(row.pp);
        for (const auto& e : row.efficiency) out << ',' << (e ? format_double(*e) : "");
        out << '\n';
      }
    }
    fmt::print("wrote {}\n", c.out);
  }
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  Config c;
  CLI::App app{"Batch lower-bound search over small sorted tables"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML/INI file with a [subcommand] section per command; command-line flags "
                 "override it and it overrides LBSEARCH_* variables");

  auto* gen_table = app.add_subcommand("gen-table", "Write a synthetic log-distributed table");
  add_table_options(gen_table, c);
  add_flag(gen_table, "out", c.out, "Output path")->required();

  auto* gen_targets_cmd = app.add_subcommand("gen-targets", "Write a synthetic target batch");
  add_table_options(gen_targets_cmd, c);
  add_target_options(gen_targets_cmd, c);
  add_flag(gen_targets_cmd, "out", c.out, "Output path")->required();

  auto* verify = app.add_subcommand("verify", "Check every algorithm against the oracle");
  add_table_options(verify, c);
  add_target_options(verify, c);
  add_input_options(verify, c);
  add_search_options(verify, c);
  verify->add_flag("--corrupt-index", c.corrupt_index, "Test hook: damage built indexes")
      ->group("");

  auto* bench = app.add_subcommand("bench", "Time each algorithm on one table and batch");
  add_table_options(bench, c);
  add_target_options(bench, c);
  add_input_options(bench, c);
  add_search_options(bench, c);
  add_bench_options(bench, c);
  c.out = "";
  add_flag(bench, "out", c.out, "JSON-lines output; .csv and .speedup.csv written alongside")
      ->default_str("bench.jsonl");

  auto* sweep = app.add_subcommand("sweep", "Time each algorithm over several batch sizes");
  add_table_options(sweep, c);
  add_target_options(sweep, c);
  add_flag(sweep, "table", c.table_path, "Table file (generated when omitted)");
  add_search_options(sweep, c);
  add_bench_options(sweep, c);
  sweep->add_option("--sizes", c.sizes, "Batch sizes, e.g. 1e2,1e4,5e6")
      ->delimiter(',')
      ->envname(env_name("sizes"))
      ->capture_default_str();
  add_flag(sweep, "out", c.out, "JSON-lines output; .csv and .speedup.csv written alongside")
      ->default_str("sweep.jsonl");

  auto* penny = app.add_subcommand("pennycook", "Performance portability over result files");
  penny->add_option("inputs", c.inputs, "Result files (.jsonl or .csv)")->required();
  penny->add_option("--platform", c.platforms, "Platform labels (default: all in the inputs)")
      ->delimiter(',');
  penny->add_option("--m", c.pennycook_m, "Only this batch size (default: every size present)");
  add_flag(penny, "timing", c.timing, "total or split")->check(CLI::IsMember({"total", "split"}));
  add_flag(penny, "out", c.out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const auto given = [](CLI::App* sub) { return sub->count("--algo") > 0; };
    if (*gen_table) return cmd_gen_table(c);
    if (*gen_targets_cmd) return cmd_gen_targets(c);
    if (*verify) return cmd_verify(c, given(verify));
    if (*bench) {
      if (c.out.empty()) c.out = "bench.jsonl";
      return cmd_bench(c, given(bench));
    }
    if (*sweep) {
      if (c.out.empty()) c.out = "sweep.jsonl";
      return cmd_sweep(c, given(sweep));
    }
    if (*penny) return cmd_pennycook(c);
  } catch (const CLI::ValidationError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const VerificationError& e) {
    fmt::print(stderr, "verification failed: {}\n", e.what());
    return kMismatch;
  } catch (const ValidationError& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kValidation;
  } catch (const IoError& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return kIo;
  }
  return kUsage;
}

}  // namespace lbsearch::cli

int main(int argc, char** argv) { return lbsearch::cli::run(argc, argv); }
