#include "vidstop/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vidstop {

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
  if (symbols_.empty()) throw ValidationError("alphabet must contain at least one symbol");
  lookup_.fill(0);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto slot = static_cast<unsigned char>(symbols_[i]);
    if (lookup_[slot] != 0) {
      throw ValidationError(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
    }
    lookup_[slot] = static_cast<std::int16_t>(i + 1);
  }
}

std::optional<std::size_t> Alphabet::class_of(char symbol) const {
  auto idx = lookup_[static_cast<unsigned char>(symbol)];
  if (idx == 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

char Alphabet::symbol_of(std::size_t class_index) const {
  if (class_index == 0 || class_index > symbols_.size()) {
    throw std::out_of_range("class index outside alphabet");
  }
  return symbols_[class_index - 1];
}

bool Alphabet::contains(std::string_view text) const {
  return std::all_of(text.begin(), text.end(), [&](char c) { return class_of(c).has_value(); });
}

CharacterDistribution CharacterDistribution::from_values(std::vector<double> values) {
  if (values.size() < 2) throw ValidationError("distribution needs the empty class and at least one symbol");
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("membership estimation outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance) throw ValidationError("membership estimations do not sum to 1");
  return unchecked(std::move(values));
}

std::size_t CharacterDistribution::argmax_class() const {
  auto first = values_.begin() + 1;
  return static_cast<std::size_t>(std::max_element(first, values_.end()) - values_.begin());
}

void Clip::validate() const {
  const std::size_t k = alphabet.size();
  if (k == 0) throw ValidationError("clip '" + id + "' has an empty alphabet");
  if (!alphabet.contains(truth)) {
    throw ValidationError("clip '" + id + "' truth contains a symbol outside the alphabet");
  }
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const auto& frame = frames[f];
    if (frame.classes != k) {
      throw ValidationError("clip '" + id + "' frame " + std::to_string(f) +
                            " class count does not match the alphabet");
    }
    for (const auto& row : frame.rows) {
      if (row.size() != k + 1) {
        throw ValidationError("clip '" + id + "' frame " + std::to_string(f) + " has a row of wrong width");
      }
    }
  }
}

RecognitionFrame make_frame(std::span<const std::vector<double>> raw_rows, std::size_t class_count,
                            double weight, LoadDiagnostics* diagnostics) {
  if (class_count == 0) throw ValidationError("class count must be positive");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw ValidationError("frame weight must be non-negative");

  RecognitionFrame frame;
  frame.classes = class_count;
  frame.weight = weight;
  frame.rows.reserve(raw_rows.size());
  for (std::size_t j = 0; j < raw_rows.size(); ++j) {
    const auto& raw = raw_rows[j];
    if (raw.size() != class_count) {
      throw ValidationError("row " + std::to_string(j) + " has " + std::to_string(raw.size()) +
                            " entries, expected " + std::to_string(class_count));
    }
    double sum = 0.0;
    for (double v : raw) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ValidationError("row " + std::to_string(j) + " has a negative or non-finite entry");
      }
      sum += v;
    }
    if (sum <= 0.0) throw ValidationError("row " + std::to_string(j) + " sums to zero");

    std::vector<double> values(class_count + 1, 0.0);
    // Rows already normalized to rounding precision are kept bit-exact.
    const bool normalized = std::abs(sum - 1.0) <= 1e-12;
    for (std::size_t k = 0; k < class_count; ++k) values[k + 1] = normalized ? raw[k] : raw[k] / sum;
    if (diagnostics && std::abs(sum - 1.0) > kRenormalizeWarnTolerance) ++diagnostics->renormalized_rows;
    frame.rows.push_back(CharacterDistribution::unchecked(std::move(values)));
  }
  return frame;
}

RecognitionFrame from_string(std::string_view text, const Alphabet& alphabet) {
  RecognitionFrame frame;
  frame.classes = alphabet.size();
  frame.rows.reserve(text.size());
  for (char c : text) {
    auto cls = alphabet.class_of(c);
    if (!cls) throw ValidationError(std::string("character '") + c + "' is not in the alphabet");
    std::vector<double> values(alphabet.size() + 1, 0.0);
    values[*cls] = 1.0;
    frame.rows.push_back(CharacterDistribution::unchecked(std::move(values)));
  }
  return frame;
}

std::string to_string(std::span<const CharacterDistribution> rows, const Alphabet& alphabet) {
  std::string out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(alphabet.symbol_of(row.argmax_class()));
  return out;
}

CharacterDistribution empty_distribution(std::size_t class_count) {
  std::vector<double> values(class_count + 1, 0.0);
  values[0] = 1.0;
  return CharacterDistribution::unchecked(std::move(values));
}

CharacterDistribution empty_distribution(const Alphabet& alphabet) {
  return empty_distribution(alphabet.size());
}

}  // namespace vidstop
