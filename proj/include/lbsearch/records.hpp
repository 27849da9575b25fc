#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lbsearch/bench.hpp"

namespace lbsearch {

nlohmann::json to_json(const BenchRecord& record);
/// Unknown keys (such as an embedded "config") are ignored.
BenchRecord record_from_json(const nlohmann::json& j);

/// One JSON object per line. A non-null `config` is embedded in every line
/// under the "config" key.
void write_jsonl(std::ostream& out, std::span<const BenchRecord> records,
                 const nlohmann::json& config = nullptr);
void write_jsonl(const std::filesystem::path& path, std::span<const BenchRecord> records,
                 const nlohmann::json& config = nullptr);
std::vector<BenchRecord> read_jsonl(std::istream& in, const std::string& source = "<stream>");
std::vector<BenchRecord> read_jsonl(const std::filesystem::path& path);

/// Header plus one row per record, columns: algorithm, platform_label, n, m,
/// trials, setup_ns, query_ns, query_ns_std, total_ns, seed.
void write_csv(std::ostream& out, std::span<const BenchRecord> records);
void write_csv(const std::filesystem::path& path, std::span<const BenchRecord> records);
/// The CSV has no timestamp column, so records read back carry an empty one.
std::vector<BenchRecord> read_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<BenchRecord> read_csv(const std::filesystem::path& path);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double v);

}  // namespace lbsearch
