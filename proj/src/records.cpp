#include "lbsearch/records.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lbsearch/error.hpp"

namespace lbsearch {

using nlohmann::json;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

json to_json(const BenchRecord& r) {
  return json{{"algorithm", r.algorithm}, {"platform_label", r.platform_label},
              {"n", r.n},                 {"m", r.m},
              {"trials", r.trials},       {"setup_ns", r.setup_ns},
              {"query_ns", r.query_ns},   {"query_ns_std", r.query_ns_std},
              {"total_ns", r.total_ns},   {"timestamp", r.timestamp},
              {"seed", r.seed}};
}

BenchRecord record_from_json(const json& j) {
  BenchRecord r;
  j.at("algorithm").get_to(r.algorithm);
  j.at("platform_label").get_to(r.platform_label);
  j.at("n").get_to(r.n);
  j.at("m").get_to(r.m);
  j.at("trials").get_to(r.trials);
  j.at("setup_ns").get_to(r.setup_ns);
  j.at("query_ns").get_to(r.query_ns);
  j.at("query_ns_std").get_to(r.query_ns_std);
  j.at("total_ns").get_to(r.total_ns);
  j.at("timestamp").get_to(r.timestamp);
  j.at("seed").get_to(r.seed);
  return r;
}

void write_jsonl(std::ostream& out, std::span<const BenchRecord> records, const json& config) {
  for (const BenchRecord& r : records) {
    json line = to_json(r);
    if (!config.is_null()) line["config"] = config;
    out << line.dump() << '\n';
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

void write_jsonl(const std::filesystem::path& path, std::span<const BenchRecord> records,
                 const json& config) {
  auto out = open_out(path);
  write_jsonl(out, records, config);
  finish(out, path);
}

std::vector<BenchRecord> read_jsonl(std::istream& in, const std::string& source) {
  std::vector<BenchRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return records;
}

std::vector<BenchRecord> read_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_jsonl(in, path.string());
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kCsvHeader =
    "algorithm,platform_label,n,m,trials,setup_ns,query_ns,query_ns_std,total_ns,seed";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& text, const std::string& source, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(source, line_no, "bad number '" + text + "'");
  }
  return value;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << csv_field(r.algorithm) << ',' << csv_field(r.platform_label) << ',' << r.n << ','
        << r.m << ',' << r.trials << ',' << format_double(r.setup_ns) << ','
        << format_double(r.query_ns) << ',' << format_double(r.query_ns_std) << ','
        << format_double(r.total_ns) << ',' << r.seed << '\n';
  }
}

void write_csv(const std::filesystem::path& path, std::span<const BenchRecord> records) {
  auto out = open_out(path);
  write_csv(out, records);
  finish(out, path);
}

std::vector<BenchRecord> read_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != split_csv(std::string(kCsvHeader))) {
    throw ParseError(source, 1, "missing or unexpected CSV header");
  }
  std::vector<BenchRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) throw ParseError(source, line_no, "expected 10 columns");
    BenchRecord r;
    r.algorithm = f[0];
    r.platform_label = f[1];
    r.n = parse_number<std::int64_t>(f[2], source, line_no);
    r.m = parse_number<std::int64_t>(f[3], source, line_no);
    r.trials = parse_number<std::int64_t>(f[4], source, line_no);
    r.setup_ns = parse_number<double>(f[5], source, line_no);
    r.query_ns = parse_number<double>(f[6], source, line_no);
    r.query_ns_std = parse_number<double>(f[7], source, line_no);
    r.total_ns = parse_number<double>(f[8], source, line_no);
    r.seed = parse_number<std::uint64_t>(f[9], source, line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BenchRecord> read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in, path.string());
}

}  // namespace lbsearch
