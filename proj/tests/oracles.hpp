#pragma once

// Test-only reference implementations. Nothing here calls into the code paths
// they check: each oracle recomputes its answer from first principles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "vidstop/combiner.hpp"
#include "vidstop/core.hpp"

namespace oracle {

using vidstop::CharacterDistribution;

inline double taxicab(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::fabs(a[k] - b[k]);
  return s / 2.0;
}

inline std::vector<double> values(const CharacterDistribution& d) {
  return {d.values().begin(), d.values().end()};
}

inline std::vector<double> empty_row(std::size_t width) {
  std::vector<double> e(width, 0.0);
  e[0] = 1.0;
  return e;
}

/// Exhaustive recursion over every edit script; exponential, use on length <= 5.
inline double edit_distance(const std::vector<std::vector<double>>& x, const std::vector<std::vector<double>>& y,
                            std::size_t i = 0, std::size_t j = 0) {
  const std::size_t width = !x.empty() ? x[0].size() : (!y.empty() ? y[0].size() : 1);
  const auto e = empty_row(width);
  if (i == x.size()) {
    double s = 0.0;
    for (std::size_t m = j; m < y.size(); ++m) s += taxicab(y[m], e);
    return s;
  }
  if (j == y.size()) {
    double s = 0.0;
    for (std::size_t m = i; m < x.size(); ++m) s += taxicab(x[m], e);
    return s;
  }
  return std::min({taxicab(x[i], y[j]) + edit_distance(x, y, i + 1, j + 1),
                   taxicab(x[i], e) + edit_distance(x, y, i + 1, j),
                   taxicab(y[j], e) + edit_distance(x, y, i, j + 1)});
}

inline std::vector<std::vector<double>> rows_of(const std::vector<CharacterDistribution>& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& r : rows) out.push_back(values(r));
  return out;
}

/// Plain multiset kept as a list; linear scans.
struct Multiset {
  std::vector<std::pair<double, std::size_t>> items;
  void insert(double v, std::size_t m) { items.emplace_back(v, m); }
  std::pair<std::size_t, double> below(double bound) const {
    std::size_t c = 0;
    double s = 0.0;
    for (auto [v, m] : items) {
      if (v < bound) {
        c += m;
        s += v * static_cast<double>(m);
      }
    }
    return {c, s};
  }
};

/// Per-candidate GLD under stored alignments and row-wise comparison: the
/// combined result is rebuilt from the recorded per-frame rows (empty where a
/// frame has no row), each candidate merge is materialized, and rows are
/// compared position by position.
inline std::vector<double> stored_alignment_distances(const vidstop::CombinerState& state) {
  const auto& result = state.result();
  const std::size_t width = state.classes() + 1;
  const auto weights = state.weights();
  const auto& history = state.history();
  double total_weight = 0.0;
  for (double w : weights) total_weight += w;

  // y[i][id] with the empty default.
  std::vector<std::map<vidstop::RowId, std::vector<double>>> y(history.size());
  for (std::size_t i = 0; i < history.size(); ++i) {
    for (std::size_t e = 0; e < history[i].size(); ++e) {
      auto v = history[i].value(e);
      y[i][history[i].rows[e]] = std::vector<double>(v.begin(), v.end());
    }
  }
  auto y_at = [&](std::size_t i, vidstop::RowId id) {
    auto it = y[i].find(id);
    return it == y[i].end() ? empty_row(width) : it->second;
  };

  std::vector<std::vector<double>> current;
  for (vidstop::RowId id : result.row_ids) {
    std::vector<double> acc(width, 0.0);
    for (std::size_t i = 0; i < history.size(); ++i) {
      const auto v = y_at(i, id);
      for (std::size_t k = 0; k < width; ++k) acc[k] += weights[i] * v[k];
    }
    for (double& a : acc) a /= total_weight;
    current.push_back(std::move(acc));
  }

  std::vector<double> out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    double g = 0.0;
    for (std::size_t j = 0; j < current.size(); ++j) {
      const auto v = y_at(i, result.row_ids[j]);
      std::vector<double> candidate(width);
      for (std::size_t k = 0; k < width; ++k) {
        candidate[k] = (total_weight * current[j][k] + weights[i] * v[k]) / (total_weight + weights[i]);
      }
      g += taxicab(current[j], candidate);
    }
    out.push_back(g);
  }
  return out;
}

inline double normalized(double g, std::size_t len) {
  return len == 0 ? 0.0 : 2.0 * g / (g + 2.0 * static_cast<double>(len));
}

// ---- random inputs -------------------------------------------------------

inline std::vector<double> random_raw_row(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution sparse(0.3);
  std::vector<double> row(k);
  double sum = 0.0;
  for (auto& v : row) {
    v = sparse(rng) ? 0.0 : u(rng);
    sum += v;
  }
  if (sum == 0.0) row[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)] = 1.0;
  return row;
}

/// Distribution over K+1 classes, empty class included.
inline CharacterDistribution random_distribution(std::mt19937_64& rng, std::size_t k, bool empty_mass = true) {
  auto raw = random_raw_row(rng, k + 1);
  if (!empty_mass) {
    raw[0] = 0.0;
    if (std::all_of(raw.begin(), raw.end(), [](double v) { return v == 0.0; })) raw[1] = 1.0;
  }
  double sum = 0.0;
  for (double v : raw) sum += v;
  for (double& v : raw) v /= sum;
  return CharacterDistribution::unchecked(std::move(raw));
}

inline std::vector<CharacterDistribution> random_sequence(std::mt19937_64& rng, std::size_t k, std::size_t len) {
  std::vector<CharacterDistribution> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(random_distribution(rng, k));
  return out;
}

inline vidstop::RecognitionFrame random_frame(std::mt19937_64& rng, std::size_t k, std::size_t max_len,
                                              double weight = 1.0) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::vector<std::vector<double>> raw;
  std::bernoulli_distribution one_hot(0.3);
  for (std::size_t j = 0; j < len; ++j) {
    if (one_hot(rng)) {
      std::vector<double> r(k, 0.0);
      r[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)] = 1.0;
      raw.push_back(std::move(r));
    } else {
      raw.push_back(random_raw_row(rng, k));
    }
  }
  return vidstop::make_frame(raw, k, weight);
}

/// Random clip of n frames over the first K letters; weighted clips draw
/// weights from [0.2, 3].
inline vidstop::Clip random_clip(std::mt19937_64& rng, std::size_t max_frames, std::size_t max_len,
                                 std::size_t max_k, bool weighted) {
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_k)(rng);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_frames)(rng);
  vidstop::Clip clip;
  clip.id = "rand";
  clip.alphabet = vidstop::Alphabet(std::string("ABCDEFGHIJ").substr(0, k));
  std::uniform_real_distribution<double> wdist(0.2, 3.0);
  for (std::size_t i = 0; i < n; ++i) {
    clip.frames.push_back(random_frame(rng, k, max_len, weighted ? wdist(rng) : 1.0));
  }
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < len; ++i) {
    clip.truth.push_back(clip.alphabet.symbol_of(std::uniform_int_distribution<std::size_t>(1, k)(rng)));
  }
  return clip;
}

}  // namespace oracle
