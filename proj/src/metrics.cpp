#include "vidstop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace vidstop {

MetricKind parse_metric(std::string_view name) {
  if (name == "gld") return MetricKind::kGld;
  if (name == "ngld") return MetricKind::kNgld;
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

std::string_view metric_name(MetricKind kind) {
  return kind == MetricKind::kGld ? "gld" : "ngld";
}

double rho_c(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("rho_c: rows have different class counts");
  return 0.5 * l1_distance(a.data(), b.data(), a.size());
}

double gap_cost(std::span<const double> row) {
  if (row.empty()) return 0.0;
  double acc = std::abs(row[0] - 1.0);
  for (std::size_t k = 1; k < row.size(); ++k) acc += std::abs(row[k]);
  return 0.5 * acc;
}

double gld(std::span<const CharacterDistribution> x, std::span<const CharacterDistribution> y) {
  const std::size_t width = !x.empty() ? x.front().size() : (!y.empty() ? y.front().size() : 0);
  auto check = [width](const CharacterDistribution& row) {
    if (row.size() != width) throw ValidationError("gld: rows have different class counts");
  };
  std::for_each(x.begin(), x.end(), check);
  std::for_each(y.begin(), y.end(), check);

  std::vector<double> gap_y(y.size());
  for (std::size_t m = 0; m < y.size(); ++m) gap_y[m] = gap_cost(y[m].values());

  // Rolling rows of the (|x|+1) x (|y|+1) table.
  std::vector<double> prev(y.size() + 1), cur(y.size() + 1);
  prev[0] = 0.0;
  for (std::size_t m = 0; m < y.size(); ++m) prev[m + 1] = prev[m] + gap_y[m];
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double gap_x = gap_cost(x[j].values());
    cur[0] = prev[0] + gap_x;
    for (std::size_t m = 0; m < y.size(); ++m) {
      const double sub = prev[m] + rho_c(x[j], y[m]);
      const double del = prev[m + 1] + gap_x;
      const double ins = cur[m] + gap_y[m];
      cur[m + 1] = std::min({sub, del, ins});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

double normalize_gld(double gld_value, std::size_t len_x, std::size_t len_y) {
  const double denom = gld_value + static_cast<double>(len_x + len_y);
  if (denom <= 0.0) return 0.0;
  // g <= len_x + len_y bounds the ratio by 1; rounding in the row sums can
  // overshoot by an ulp.
  return std::min(1.0, 2.0 * gld_value / denom);
}

double ngld(std::span<const CharacterDistribution> x, std::span<const CharacterDistribution> y) {
  return normalize_gld(gld(x, y), x.size(), y.size());
}

double distance(MetricKind kind, std::span<const CharacterDistribution> x,
                std::span<const CharacterDistribution> y) {
  return kind == MetricKind::kGld ? gld(x, y) : ngld(x, y);
}

}  // namespace vidstop
