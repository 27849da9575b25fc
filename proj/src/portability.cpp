#include "lbsearch/portability.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "lbsearch/error.hpp"

namespace lbsearch {

double pennycook_score(std::span<const std::optional<double>> efficiencies) {
  if (efficiencies.empty()) throw ValidationError("performance portability needs >= 1 platform");
  double inverse_sum = 0.0;
  for (const auto& e : efficiencies) {
    if (!e || !(*e > 0.0)) return 0.0;
    inverse_sum += 1.0 / *e;
  }
  return static_cast<double>(efficiencies.size()) / inverse_sum;
}

PortabilityReport pennycook(std::span<const BenchRecord> records,
                            std::span<const std::string> platforms, std::int64_t m,
                            TimingMode mode) {
  if (platforms.empty()) throw ValidationError("performance portability needs >= 1 platform");

  // Fastest time per (algorithm, platform); algorithms in first-seen order.
  std::vector<std::string> algorithms;
  std::map<std::pair<std::string, std::string>, double> best;
  for (const BenchRecord& r : records) {
    if (r.m != m) continue;
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
    const auto key = std::make_pair(r.algorithm, r.platform_label);
    const auto it = best.find(key);
    const double t = r.time_ns(mode);
    if (it == best.end() || t < it->second) best[key] = t;
  }
  if (algorithms.empty()) {
    throw ValidationError("no records with m=" + std::to_string(m));
  }

  std::vector<double> fastest(platforms.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < platforms.size(); ++i) {
    for (const auto& a : algorithms) {
      if (const auto it = best.find({a, platforms[i]}); it != best.end()) {
        fastest[i] = std::min(fastest[i], it->second);
      }
    }
  }

  PortabilityReport report;
  report.m = m;
  report.mode = mode;
  report.platforms.assign(platforms.begin(), platforms.end());
  for (const auto& a : algorithms) {
    AlgorithmPortability row;
    row.algorithm = a;
    for (std::size_t i = 0; i < platforms.size(); ++i) {
      const auto it = best.find({a, platforms[i]});
      if (it == best.end()) {
        row.efficiency.emplace_back(std::nullopt);
      } else {
        row.efficiency.emplace_back(it->second > 0.0 ? fastest[i] / it->second : 1.0);
      }
    }
    row.pp = pennycook_score(row.efficiency);
    report.algorithms.push_back(std::move(row));
  }
  return report;
}

}  // namespace lbsearch
