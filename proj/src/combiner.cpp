#include "vidstop/combiner.hpp"

#include <stdexcept>
#include <string>

#include "vidstop/metrics.hpp"

namespace vidstop {
namespace {

void check_width(std::span<const CharacterDistribution> rows, std::size_t width, const char* what) {
  for (const auto& row : rows) {
    if (row.size() != width) throw ValidationError(std::string(what) + ": rows have different class counts");
  }
}

// base + t * (target - base): the weighted mean of `base` at weight W and
// `target` at weight w when t = w / (W + w). Leaves base bit-exact when the
// rows are equal.
CharacterDistribution blend(std::span<const double> base, std::span<const double> target, double t) {
  std::vector<double> out(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) out[k] = base[k] + t * (target[k] - base[k]);
  return CharacterDistribution::unchecked(std::move(out));
}

double blend_factor(double weight_sum, double weight) {
  const double total = weight_sum + weight;
  if (!(total > 0.0)) throw ValidationError("combined weight must be positive");
  return weight / total;
}

enum Choice : std::uint8_t { kChoiceMatch, kChoiceGapFrame, kChoiceGapCombined };

}  // namespace

Alignment align(std::span<const CharacterDistribution> frame_rows,
                std::span<const CharacterDistribution> result_rows) {
  const std::size_t rows = result_rows.size();
  const std::size_t cols = frame_rows.size();
  if (rows > 0 && cols > 0 && result_rows.front().size() != frame_rows.front().size()) {
    throw ValidationError("align: frame and result have different class counts");
  }
  if (rows > 0) check_width(result_rows, result_rows.front().size(), "align");
  if (cols > 0) check_width(frame_rows, frame_rows.front().size(), "align");

  std::vector<double> gap_result(rows), gap_frame(cols);
  for (std::size_t i = 0; i < rows; ++i) gap_result[i] = gap_cost(result_rows[i].values());
  for (std::size_t m = 0; m < cols; ++m) gap_frame[m] = gap_cost(frame_rows[m].values());

  // Suffix table: cost[i][m] aligns result_rows[i..] with frame_rows[m..], so
  // the forward walk from (0, 0) applies the preference order from the start.
  const std::size_t stride = cols + 1;
  std::vector<double> cost((rows + 1) * stride, 0.0);
  std::vector<std::uint8_t> choice((rows + 1) * stride, kChoiceMatch);
  for (std::size_t ii = rows + 1; ii-- > 0;) {
    for (std::size_t mm = cols + 1; mm-- > 0;) {
      if (ii == rows && mm == cols) continue;
      double best = std::numeric_limits<double>::infinity();
      std::uint8_t pick = kChoiceMatch;
      if (ii < rows && mm < cols) {
        best = rho_c(result_rows[ii], frame_rows[mm]) + cost[(ii + 1) * stride + mm + 1];
      }
      if (ii < rows) {
        const double v = gap_result[ii] + cost[(ii + 1) * stride + mm];
        if (v < best) best = v, pick = kChoiceGapFrame;
      }
      if (mm < cols) {
        const double v = gap_frame[mm] + cost[ii * stride + mm + 1];
        if (v < best) best = v, pick = kChoiceGapCombined;
      }
      cost[ii * stride + mm] = best;
      choice[ii * stride + mm] = pick;
    }
  }

  Alignment out;
  out.cost = cost[0];
  out.steps.reserve(rows + cols);
  std::size_t i = 0, m = 0;
  while (i < rows || m < cols) {
    switch (choice[i * stride + m]) {
      case kChoiceMatch:
        out.steps.push_back({StepKind::kMatch, i++, m++});
        break;
      case kChoiceGapFrame:
        out.steps.push_back({StepKind::kGapFrame, i++, kNoRow});
        break;
      default:
        out.steps.push_back({StepKind::kGapCombined, i, m++});
        break;
    }
  }
  return out;
}

Alignment align(const RecognitionFrame& frame, const CombinedResult& result) {
  if (!result.rows.empty() && frame.classes != result.rows.front().classes()) {
    throw ValidationError("align: frame and result have different class counts");
  }
  return align(frame.rows, result.rows);
}

CombinerState::CombinerState(std::size_t class_count, CombinerOptions options)
    : classes_(class_count), options_(options), empty_(empty_distribution(class_count)) {
  if (class_count == 0) throw ValidationError("class count must be positive");
}

std::vector<MultisetIndex> CombinerState::make_cells(RowId id) const {
  std::vector<MultisetIndex> cells;
  cells.reserve(classes_ + 1);
  for (std::size_t k = 0; k <= classes_; ++k) {
    const std::uint64_t salt = (static_cast<std::uint64_t>(id) * (classes_ + 1) + k + 1) * 0x9e3779b97f4a7c15ULL;
    cells.emplace_back(options_.treap_seed ^ salt);
  }
  return cells;
}

const MultisetIndex& CombinerState::cell(RowId id, std::size_t k) const {
  if (!options_.track_treaps) throw UnsupportedModeError("treap cells are not tracked");
  return cells_.at(id).at(k);
}

void CombinerState::absorb(const RecognitionFrame& frame) {
  if (frame.classes != classes_) throw ValidationError("absorb: frame class count does not match the state");
  check_width(frame.rows, classes_ + 1, "absorb");
  const double w = frame.weight;
  if (options_.track_treaps && w != 1.0) {
    throw UnsupportedModeError("treap bookkeeping requires unweighted frames");
  }
  const double t = blend_factor(weight_sum_, w);
  const Alignment alignment = align(frame.rows, result_.rows);
  const std::size_t previous_frames = stage();
  const std::span<const double> empty = empty_.values();

  CombinedResult next;
  next.rows.reserve(alignment.steps.size());
  next.row_ids.reserve(alignment.steps.size());
  FrameHistory record;
  if (options_.track_history) {
    record.width = classes_ + 1;
    record.rows.reserve(frame.length());
    record.values.reserve(frame.length() * record.width);
  }

  for (const AlignStep& step : alignment.steps) {
    RowId id;
    std::span<const double> observed;
    switch (step.kind) {
      case StepKind::kMatch:
        id = result_.row_ids[step.combined_row];
        observed = frame.rows[step.frame_row].values();
        next.rows.push_back(blend(result_.rows[step.combined_row].values(), observed, t));
        break;
      case StepKind::kGapFrame:
        id = result_.row_ids[step.combined_row];
        observed = empty;
        next.rows.push_back(blend(result_.rows[step.combined_row].values(), observed, t));
        break;
      default: {
        id = static_cast<RowId>(sums_.size());
        observed = frame.rows[step.frame_row].values();
        next.rows.push_back(blend(empty, observed, t));
        // Earlier frames left this position unaligned, i.e. empty.
        std::vector<double> sums(classes_ + 1);
        for (std::size_t k = 0; k <= classes_; ++k) sums[k] = weight_sum_ * empty[k];
        sums_.push_back(std::move(sums));
        if (options_.track_treaps) {
          cells_.push_back(make_cells(id));
          if (previous_frames > 0) {
            for (std::size_t k = 0; k <= classes_; ++k) cells_[id][k].insert(empty[k], previous_frames);
          }
        }
        break;
      }
    }
    next.row_ids.push_back(id);

    auto& sums = sums_[id];
    for (std::size_t k = 0; k <= classes_; ++k) sums[k] += w * observed[k];
    if (options_.track_treaps) {
      for (std::size_t k = 0; k <= classes_; ++k) cells_[id][k].insert(observed[k], 1);
    }
    if (options_.track_history && step.kind != StepKind::kGapFrame) {
      record.rows.push_back(id);
      record.values.insert(record.values.end(), observed.begin(), observed.end());
    }
  }

  result_ = std::move(next);
  weight_sum_ += w;
  weights_.push_back(w);
  if (w != 1.0) unweighted_ = false;
  if (options_.track_history) history_.push_back(std::move(record));
}

CombinedResult CombinerState::combine_candidate(const RecognitionFrame& candidate) const {
  if (candidate.classes != classes_) {
    throw ValidationError("combine_candidate: frame class count does not match the state");
  }
  const double t = blend_factor(weight_sum_, candidate.weight);
  const Alignment alignment = align(candidate.rows, result_.rows);
  const std::span<const double> empty = empty_.values();

  CombinedResult out;
  out.rows.reserve(alignment.steps.size());
  out.row_ids.reserve(alignment.steps.size());
  auto fresh = static_cast<RowId>(sums_.size());
  for (const AlignStep& step : alignment.steps) {
    switch (step.kind) {
      case StepKind::kMatch:
        out.rows.push_back(blend(result_.rows[step.combined_row].values(),
                                 candidate.rows[step.frame_row].values(), t));
        out.row_ids.push_back(result_.row_ids[step.combined_row]);
        break;
      case StepKind::kGapFrame:
        out.rows.push_back(blend(result_.rows[step.combined_row].values(), empty, t));
        out.row_ids.push_back(result_.row_ids[step.combined_row]);
        break;
      default:
        out.rows.push_back(blend(empty, candidate.rows[step.frame_row].values(), t));
        out.row_ids.push_back(fresh++);
        break;
    }
  }
  return out;
}

CombinedResult CombinerState::current_result() const {
  if (stage() == 0) throw std::logic_error("no frames have been absorbed");
  return result_;
}

}  // namespace vidstop
