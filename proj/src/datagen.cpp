#include "lbsearch/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lbsearch/error.hpp"

namespace lbsearch {

std::string_view to_string(Distribution d) noexcept {
  switch (d) {
    case Distribution::kUniform: return "uniform";
    case Distribution::kLinear: return "linear";
    case Distribution::kGaussian: return "gaussian";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "linear") return Distribution::kLinear;
  if (name == "gaussian") return Distribution::kGaussian;
  throw ValidationError("unknown distribution '" + std::string(name) +
                        "' (expected uniform, linear or gaussian)");
}

void GenSpec::validate() const {
  if (n < 2) throw ValidationError("n must be >= 2, got " + std::to_string(n));
  if (include_zero_head && n < 3) {
    throw ValidationError("a zero head needs n >= 3 so two positive values remain");
  }
  if (m < 1) throw ValidationError("m must be >= 1, got " + std::to_string(m));
  if (!(xmin_pos > 0.0) || !std::isfinite(xmax) || !(xmin_pos < xmax)) {
    throw ValidationError("table range needs 0 < xmin_pos < xmax");
  }
  if (!(jitter >= 0.0 && jitter < 0.5)) throw ValidationError("jitter must be in [0, 0.5)");
  if (!std::isfinite(target_lo) || !std::isfinite(target_hi) || !(target_lo < target_hi)) {
    throw ValidationError("target range needs finite target_lo < target_hi");
  }
  if (distribution == Distribution::kUniform && !(target_lo > 0.0)) {
    throw ValidationError("uniform-over-decades targets need target_lo > 0");
  }
}

namespace {

// mt19937_64 is fully specified by the standard; the standard distributions
// are not, so the conversions to doubles are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

SortedTable gen_log_table(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const index_t head = spec.include_zero_head ? 1 : 0;
  const index_t count = spec.n - head;
  const double lo = std::log10(spec.xmin_pos);
  const double hi = std::log10(spec.xmax);
  const double step = (hi - lo) / static_cast<double>(count - 1);

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(spec.n));
  if (head) values.push_back(0.0);
  values.push_back(spec.xmin_pos);
  for (index_t i = 1; i + 1 < count; ++i) {
    const double shift = spec.jitter * step * rng.uniform(-1.0, 1.0);
    values.push_back(std::pow(10.0, lo + step * static_cast<double>(i) + shift));
  }
  values.push_back(spec.xmax);
  std::sort(values.begin(), values.end());
  return SortedTable(values);
}

TargetBatch gen_targets(const GenSpec& spec) {
  spec.validate();
  // Distinct stream from the table generated with the same seed.
  Rng rng(spec.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<double> values(static_cast<std::size_t>(spec.m));
  switch (spec.distribution) {
    case Distribution::kUniform: {
      const double lo = std::log10(spec.target_lo);
      const double hi = std::log10(spec.target_hi);
      for (double& v : values) v = std::pow(10.0, rng.uniform(lo, hi));
      break;
    }
    case Distribution::kLinear:
      for (double& v : values) v = rng.uniform(spec.target_lo, spec.target_hi);
      break;
    case Distribution::kGaussian: {
      const double center = 0.5 * (std::log10(spec.xmin_pos) + std::log10(spec.xmax));
      for (double& v : values) v = std::pow(10.0, center + rng.normal());
      break;
    }
  }
  return TargetBatch(values);
}

// ---------------------------------------------------------------------------
// File I/O

namespace {

void write_values(const std::filesystem::path& path, std::string_view header,
                  std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "# " << header << " count=" << values.size() << '\n';
  char buf[64];
  for (double v : values) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.write(buf, len);
    out.put('\n');
  }
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

struct ParsedValues {
  std::vector<double> values;
  std::vector<std::size_t> lines;
};

ParsedValues read_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  ParsedValues parsed;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError(path.string(), line_no, "not a number: '" + std::string(begin, end) + "'");
    }
    parsed.values.push_back(v);
    parsed.lines.push_back(line_no);
  }
  if (in.bad()) throw IoError("read from '" + path.string() + "' failed");
  return parsed;
}

}  // namespace

void save_table(const std::filesystem::path& path, const SortedTable& table) {
  write_values(path, "lbsearch table", table.values());
}

SortedTable load_table(const std::filesystem::path& path) {
  ParsedValues parsed = read_values(path);
  for (std::size_t i = 1; i < parsed.values.size(); ++i) {
    if (parsed.values[i] < parsed.values[i - 1]) {
      throw ValidationError(path.string() + ":" + std::to_string(parsed.lines[i]) +
                            ": table values must be non-decreasing");
    }
  }
  return SortedTable(parsed.values);
}

void save_targets(const std::filesystem::path& path, const TargetBatch& targets) {
  write_values(path, "lbsearch targets", targets.values());
}

TargetBatch load_targets(const std::filesystem::path& path) {
  return TargetBatch(read_values(path).values);
}

}  // namespace lbsearch
