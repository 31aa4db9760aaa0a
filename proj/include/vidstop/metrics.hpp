#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>

#include "vidstop/core.hpp"

namespace vidstop {

enum class MetricKind { kGld, kNgld };

MetricKind parse_metric(std::string_view name);
std::string_view metric_name(MetricKind kind);

/// Sum of |a_k - b_k| over n entries. Four independent partial sums keep the
/// loop free of a serial dependency chain.
inline double l1_distance(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += std::abs(a[k] - b[k]);
    s1 += std::abs(a[k + 1] - b[k + 1]);
    s2 += std::abs(a[k + 2] - b[k + 2]);
    s3 += std::abs(a[k + 3] - b[k + 3]);
  }
  for (; k < n; ++k) s0 += std::abs(a[k] - b[k]);
  return (s0 + s1) + (s2 + s3);
}

/// Scaled taxicab distance between two character rows: half the L1 norm of
/// their difference. Values lie in [0, 1] for valid distributions.
double rho_c(std::span<const double> a, std::span<const double> b);
inline double rho_c(const CharacterDistribution& a, const CharacterDistribution& b) {
  return rho_c(a.values(), b.values());
}

/// Distance from a row to the empty distribution, i.e. its insertion/deletion cost.
double gap_cost(std::span<const double> row);

/// Generalized Levenshtein distance with rho_c substitution and gap costs.
double gld(std::span<const CharacterDistribution> x, std::span<const CharacterDistribution> y);

/// 2*g / (g + len_x + len_y); zero when both sequences are empty.
double normalize_gld(double gld_value, std::size_t len_x, std::size_t len_y);

/// Normalized GLD in [0, 1].
double ngld(std::span<const CharacterDistribution> x, std::span<const CharacterDistribution> y);

double distance(MetricKind kind, std::span<const CharacterDistribution> x,
                std::span<const CharacterDistribution> y);

}  // namespace vidstop
