#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vidstop {

/// Raised when input data violates a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is requested in a mode that cannot support it
/// (e.g. weighted frames fed to treap bookkeeping).
class UnsupportedModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr double kRenormalizeWarnTolerance = 1e-6;

/// Ordered set of single-byte character symbols. Class index 0 is reserved
/// for the empty class; symbol i maps to class index i + 1.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbols() const { return symbols_; }

  /// Class index (1..K) of `symbol`, or nullopt when it is not a member.
  std::optional<std::size_t> class_of(char symbol) const;
  char symbol_of(std::size_t class_index) const;
  bool contains(std::string_view text) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::string symbols_;
  std::array<std::int16_t, 256> lookup_{};
};

/// Membership estimations over K + 1 classes, index 0 being the empty class.
class CharacterDistribution {
 public:
  CharacterDistribution() = default;

  /// Checks the range and sum-to-one invariants.
  static CharacterDistribution from_values(std::vector<double> values);
  /// Skips validation; for values produced by convex combinations of valid rows.
  static CharacterDistribution unchecked(std::vector<double> values) {
    CharacterDistribution d;
    d.values_ = std::move(values);
    return d;
  }

  std::size_t size() const { return values_.size(); }
  std::size_t classes() const { return values_.empty() ? 0 : values_.size() - 1; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }
  double empty_mass() const { return values_.front(); }

  /// Class with the largest estimation among 1..K (first on ties).
  std::size_t argmax_class() const;

  friend bool operator==(const CharacterDistribution&, const CharacterDistribution&) = default;

 private:
  std::vector<double> values_;
};

/// One per-frame string recognition result: M rows plus a combination weight.
struct RecognitionFrame {
  std::size_t classes = 0;
  std::vector<CharacterDistribution> rows;
  double weight = 1.0;

  std::size_t length() const { return rows.size(); }

  friend bool operator==(const RecognitionFrame&, const RecognitionFrame&) = default;
};

/// Counters surfaced while building frames from external data.
struct LoadDiagnostics {
  std::size_t renormalized_rows = 0;  // rows whose sum was off by more than 1e-6
};

/// One dataset unit: a ground-truth string and its frame results.
struct Clip {
  std::string id;
  Alphabet alphabet;
  std::string truth;
  std::vector<RecognitionFrame> frames;

  /// Throws ValidationError on class-count or truth/alphabet mismatch.
  void validate() const;

  friend bool operator==(const Clip&, const Clip&) = default;
};

/// Builds a frame from K-column rows (without the empty column). Each row is
/// renormalized to sum 1 and a zero empty-class entry is prepended.
RecognitionFrame make_frame(std::span<const std::vector<double>> raw_rows,
                            std::size_t class_count, double weight = 1.0,
                            LoadDiagnostics* diagnostics = nullptr);

/// One-hot frame for `text`.
RecognitionFrame from_string(std::string_view text, const Alphabet& alphabet);

/// Argmax decoding (ignoring the empty class) of a row sequence.
std::string to_string(std::span<const CharacterDistribution> rows, const Alphabet& alphabet);

/// Distribution with the empty class at 1.0.
CharacterDistribution empty_distribution(std::size_t class_count);
CharacterDistribution empty_distribution(const Alphabet& alphabet);

}  // namespace vidstop
