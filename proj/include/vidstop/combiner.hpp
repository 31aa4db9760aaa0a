#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "vidstop/core.hpp"
#include "vidstop/treap.hpp"

namespace vidstop {

/// Stable identifier of a combined-result row. Ids grow in creation order and
/// survive later insertions that shift row positions.
using RowId = std::uint32_t;

/// The accumulated result: rows in display order with their stable ids.
struct CombinedResult {
  std::vector<CharacterDistribution> rows;
  std::vector<RowId> row_ids;

  std::size_t size() const { return rows.size(); }
  friend bool operator==(const CombinedResult&, const CombinedResult&) = default;
};

enum class StepKind : std::uint8_t {
  kMatch,        // frame row merged into an existing combined row
  kGapFrame,     // combined row without a frame counterpart
  kGapCombined,  // frame row opening a new combined row
};

inline constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();

/// One alignment step. Steps are listed in output order, so step t produces
/// row t of the merged result. For kGapCombined, `combined_row` is the index
/// of the existing row the new one is inserted before (S for the tail).
struct AlignStep {
  StepKind kind;
  std::size_t combined_row;
  std::size_t frame_row;  // kNoRow for kGapFrame

  friend bool operator==(const AlignStep&, const AlignStep&) = default;
};

struct Alignment {
  std::vector<AlignStep> steps;
  double cost = 0.0;
};

/// Minimal-cost row alignment between a frame and a combined result. Match
/// costs rho_c between the rows, a gap costs rho_c against the empty
/// distribution. Equal-cost choices prefer a match, then leaving the combined
/// row unmatched, then opening a new row, resolved from the start of the strings.
Alignment align(const RecognitionFrame& frame, const CombinedResult& result);
Alignment align(std::span<const CharacterDistribution> frame_rows,
                std::span<const CharacterDistribution> result_rows);

struct CombinerOptions {
  bool track_history = false;  // per-frame aligned rows, needed by Method A
  bool track_treaps = false;   // per-cell multiset indices, needed by Method B
  std::uint64_t treap_seed = MultisetIndex::kDefaultSeed;
};

/// Rows of one absorbed frame keyed by the combined row each was merged into.
/// Rows not listed implicitly hold the empty distribution.
struct FrameHistory {
  std::size_t width = 0;
  std::vector<RowId> rows;
  std::vector<double> values;  // rows.size() x width, row-major

  std::size_t size() const { return rows.size(); }
  std::span<const double> value(std::size_t entry) const {
    return {values.data() + entry * width, width};
  }
};

/// Incremental combination state R_n together with the bookkeeping consumed
/// by the fast estimators: per-cell weighted sums, per-frame aligned rows and
/// optional per-cell treaps. Confined to a single thread.
class CombinerState {
 public:
  explicit CombinerState(std::size_t class_count, CombinerOptions options = {});

  void absorb(const RecognitionFrame& frame);

  /// Result of absorbing `candidate` on top of the current state, computed
  /// without modifying it.
  CombinedResult combine_candidate(const RecognitionFrame& candidate) const;

  /// Snapshot of R_n. Throws std::logic_error before the first frame.
  CombinedResult current_result() const;

  const CombinedResult& result() const { return result_; }
  std::size_t stage() const { return weights_.size(); }
  std::size_t length() const { return result_.size(); }
  std::size_t classes() const { return classes_; }
  double weight_sum() const { return weight_sum_; }
  bool unweighted() const { return unweighted_; }
  const CombinerOptions& options() const { return options_; }

  std::span<const double> weights() const { return weights_; }
  /// A_j: weighted sum of the memberships merged into row `id`, per class.
  std::span<const double> weighted_sums(RowId id) const { return sums_.at(id); }
  const MultisetIndex& cell(RowId id, std::size_t k) const;
  const std::vector<FrameHistory>& history() const { return history_; }
  std::size_t row_id_count() const { return sums_.size(); }

 private:
  std::vector<MultisetIndex> make_cells(RowId id) const;

  std::size_t classes_;
  CombinerOptions options_;
  CharacterDistribution empty_;
  CombinedResult result_;
  double weight_sum_ = 0.0;
  bool unweighted_ = true;
  std::vector<double> weights_;
  std::vector<std::vector<double>> sums_;           // by RowId
  std::vector<std::vector<MultisetIndex>> cells_;   // by RowId, then class
  std::vector<FrameHistory> history_;
};

}  // namespace vidstop
