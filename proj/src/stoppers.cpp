#include "vidstop/stoppers.hpp"

#include <optional>
#include <string>

namespace vidstop {
namespace {

double apply_metric(MetricKind metric, double gld_value, std::size_t len_x, std::size_t len_y) {
  return metric == MetricKind::kGld ? gld_value : normalize_gld(gld_value, len_x, len_y);
}

void require_frames(const CombinerState& state) {
  if (state.stage() == 0) throw std::logic_error("estimate requested before any frame was absorbed");
}

}  // namespace

StopMethod parse_method(std::string_view name) {
  if (name == "base") return StopMethod::kBase;
  if (name == "a") return StopMethod::kMethodA;
  if (name == "b") return StopMethod::kMethodB;
  if (name == "fixed") return StopMethod::kFixedStage;
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(StopMethod method) {
  switch (method) {
    case StopMethod::kBase:
      return "base";
    case StopMethod::kMethodA:
      return "a";
    case StopMethod::kMethodB:
      return "b";
    default:
      return "fixed";
  }
}

void StopperConfig::validate() const {
  if (!(delta >= 0.0)) throw ValidationError("delta must be non-negative");
  if (!(threshold >= 0.0)) throw ValidationError("threshold must be non-negative");
  if (max_stages == 0) throw ValidationError("max_stages must be positive");
  if (method == StopMethod::kFixedStage && (fixed_stage == 0 || fixed_stage > max_stages)) {
    throw ValidationError("fixed stage must lie in [1, max_stages]");
  }
}

CombinerOptions bookkeeping_for(StopMethod method) {
  CombinerOptions options;
  options.track_history = method == StopMethod::kMethodA;
  options.track_treaps = method == StopMethod::kMethodB;
  return options;
}

EstimationBreakdown estimate_base(const CombinerState& state, std::span<const RecognitionFrame> frames,
                                  MetricKind metric, double delta) {
  require_frames(state);
  if (frames.size() != state.stage()) {
    throw ValidationError("estimate_base: frame list does not match the number of absorbed frames");
  }
  const auto& current = state.result().rows;
  EstimationBreakdown out;
  out.per_candidate.reserve(frames.size());
  double total = 0.0;
  for (const auto& frame : frames) {
    const CombinedResult candidate = state.combine_candidate(frame);
    const double g = gld(current, candidate.rows);
    const double d = apply_metric(metric, g, current.size(), candidate.size());
    out.gld_aggregate += g;
    out.per_candidate.push_back(d);
    total += d;
  }
  out.estimate = (delta + total) / static_cast<double>(frames.size() + 1);
  return out;
}

EstimationBreakdown estimate_method_a(const CombinerState& state, MetricKind metric, double delta) {
  require_frames(state);
  if (!state.options().track_history) throw UnsupportedModeError("Method A requires history tracking");

  const CombinedResult& result = state.result();
  const std::size_t rows = result.size();
  const std::size_t width = state.classes() + 1;
  const double weight_sum = state.weight_sum();

  // L1 distance of each current row to the empty distribution; the value a
  // frame contributes at rows it was never aligned with.
  std::vector<double> to_empty(rows);
  for (std::size_t j = 0; j < rows; ++j) to_empty[j] = 2.0 * gap_cost(result.rows[j].values());

  std::vector<const double*> aligned(state.row_id_count(), nullptr);
  EstimationBreakdown out;
  out.per_candidate.reserve(state.stage());
  double total = 0.0;
  const auto weights = state.weights();
  for (std::size_t i = 0; i < state.history().size(); ++i) {
    const FrameHistory& frame = state.history()[i];
    for (std::size_t e = 0; e < frame.size(); ++e) aligned[frame.rows[e]] = frame.value(e).data();

    double l1 = 0.0;
    for (std::size_t j = 0; j < rows; ++j) {
      const double* y = aligned[result.row_ids[j]];
      if (!y) {
        l1 += to_empty[j];
        continue;
      }
      l1 += l1_distance(y, result.rows[j].values().data(), width);
    }
    for (RowId id : frame.rows) aligned[id] = nullptr;

    // Moving row j from R to R + w (y - R) / (W + w) shifts it by w |y - R| / (W + w).
    const double g = 0.5 * weights[i] * l1 / (weight_sum + weights[i]);
    const double d = apply_metric(metric, g, rows, rows);
    out.gld_aggregate += g;
    out.per_candidate.push_back(d);
    total += d;
  }
  out.estimate = (delta + total) / static_cast<double>(state.stage() + 1);
  return out;
}

EstimationBreakdown estimate_method_b(const CombinerState& state, MetricKind metric, double delta) {
  require_frames(state);
  if (!state.options().track_treaps) throw UnsupportedModeError("Method B requires treap tracking");
  if (!state.unweighted()) throw UnsupportedModeError("Method B supports unweighted frames only");

  const CombinedResult& result = state.result();
  const std::size_t n = state.stage();
  const std::size_t width = state.classes() + 1;

  // Per cell, sum_i |mean - y_i| = 2 (|L| mean - B) when the cell total is
  // n * mean, with L the values strictly below the mean and B their sum.
  double aggregate = 0.0;
  for (std::size_t j = 0; j < result.size(); ++j) {
    const auto r = result.rows[j].values();
    const RowId id = result.row_ids[j];
    for (std::size_t k = 0; k < width; ++k) {
      const BelowQuery q = state.cell(id, k).below(r[k]);
      aggregate += static_cast<double>(q.count) * r[k] - q.sum;
    }
  }
  const double denom = static_cast<double>(n + 1);
  EstimationBreakdown out;
  out.gld_aggregate = aggregate / denom;
  out.estimate = (delta + apply_metric(metric, out.gld_aggregate, result.size(), result.size())) / denom;
  return out;
}

EstimationBreakdown estimate(const CombinerState& state, std::span<const RecognitionFrame> frames,
                             const StopperConfig& config) {
  switch (config.method) {
    case StopMethod::kBase:
      return estimate_base(state, frames, config.metric, config.delta);
    case StopMethod::kMethodA:
      return estimate_method_a(state, config.metric, config.delta);
    case StopMethod::kMethodB:
      return estimate_method_b(state, config.metric, config.delta);
    default:
      throw UnsupportedModeError("the fixed-stage stopper has no estimate");
  }
}

namespace {

// Drives one clip through `config`. With `trace` set, every stage up to
// max_stages is processed and its error recorded; otherwise processing ends
// at the stopping stage.
StopOutcome drive(const Clip& clip, const StopperConfig& config, ClipTrace* trace) {
  config.validate();
  if (clip.frames.empty()) throw ValidationError("clip '" + clip.id + "' has no frames");
  clip.validate();

  const RecognitionFrame truth = from_string(clip.truth, clip.alphabet);
  const bool fixed = config.method == StopMethod::kFixedStage;
  CombinerState state(clip.alphabet.size(), bookkeeping_for(config.method));
  std::vector<RecognitionFrame> observed;
  if (config.method == StopMethod::kBase) observed.reserve(config.max_stages);

  StopOutcome outcome;
  std::optional<CombinedResult> stopped_result;
  for (std::size_t n = 1; n <= config.max_stages; ++n) {
    const RecognitionFrame& frame = clip.frames[(n - 1) % clip.frames.size()];
    state.absorb(frame);
    if (config.method == StopMethod::kBase) observed.push_back(frame);

    bool stop = false;
    if (fixed) {
      stop = n == config.fixed_stage;
    } else {
      const double value = estimate(state, observed, config).estimate;
      if (trace) trace->estimates.push_back(value);
      if (!stopped_result) {
        outcome.estimate_trace.push_back(value);
        stop = should_stop(value, config);
      }
    }
    if (trace) trace->errors.push_back(ngld(state.result().rows, truth.rows));

    if (!stopped_result && (stop || n == config.max_stages)) {
      outcome.stop_stage = n;
      outcome.forced = !stop;
      stopped_result = state.result();
      if (!trace) break;
    }
  }
  outcome.final_error = ngld(stopped_result->rows, truth.rows);
  return outcome;
}

}  // namespace

StopOutcome run_clip(const Clip& clip, const StopperConfig& config) {
  return drive(clip, config, nullptr);
}

StopOutcome fixed_stage_baseline(const Clip& clip, std::size_t stage, std::size_t max_stages) {
  StopperConfig config;
  config.method = StopMethod::kFixedStage;
  config.fixed_stage = stage;
  config.max_stages = max_stages;
  return run_clip(clip, config);
}

ClipTrace trace_clip(const Clip& clip, const StopperConfig& config) {
  ClipTrace trace;
  drive(clip, config, &trace);
  return trace;
}

StopOutcome outcome_from_trace(const ClipTrace& trace, const StopperConfig& config) {
  config.validate();
  const std::size_t stages = trace.errors.size();
  if (stages == 0) throw ValidationError("empty clip trace");
  StopOutcome outcome;
  if (config.method == StopMethod::kFixedStage) {
    outcome.stop_stage = std::min(config.fixed_stage, stages);
    outcome.forced = false;
  } else {
    if (trace.estimates.size() != stages) throw ValidationError("trace has no estimates");
    outcome.stop_stage = stages;
    outcome.forced = true;
    for (std::size_t n = 1; n <= stages; ++n) {
      outcome.estimate_trace.push_back(trace.estimates[n - 1]);
      if (should_stop(trace.estimates[n - 1], config)) {
        outcome.stop_stage = n;
        outcome.forced = false;
        break;
      }
    }
  }
  outcome.final_error = trace.errors[outcome.stop_stage - 1];
  return outcome;
}

}  // namespace vidstop
