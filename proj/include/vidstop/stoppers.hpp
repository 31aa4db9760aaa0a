#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vidstop/combiner.hpp"
#include "vidstop/core.hpp"
#include "vidstop/metrics.hpp"

namespace vidstop {

enum class StopMethod {
  kBase,        // full modelling: re-align and re-combine every candidate
  kMethodA,     // stored alignments, direct summation over frames
  kMethodB,     // stored alignments, treap-backed summation, aggregate normalization
  kFixedStage,  // stop after a fixed number of frames
};

StopMethod parse_method(std::string_view name);
std::string_view method_name(StopMethod method);

struct StopperConfig {
  StopMethod method = StopMethod::kMethodA;
  MetricKind metric = MetricKind::kNgld;
  double delta = 0.1;
  double threshold = 0.0;       // observation cost
  std::size_t fixed_stage = 1;  // kFixedStage only
  std::size_t max_stages = 30;

  void validate() const;
};

struct EstimationBreakdown {
  double estimate = 0.0;
  double gld_aggregate = 0.0;         // sum of per-candidate GLD before any normalization
  std::vector<double> per_candidate;  // distances under the configured metric; empty for Method B
};

struct StopOutcome {
  std::size_t stop_stage = 0;
  bool forced = false;
  double final_error = 0.0;
  std::vector<double> estimate_trace;  // one entry per processed stage; empty for kFixedStage
};

/// Bookkeeping a combiner needs to serve `method`.
CombinerOptions bookkeeping_for(StopMethod method);

/// Expected distance to the next result, modelled by re-combining each
/// observed frame as a candidate. `frames` are the n frames absorbed so far.
EstimationBreakdown estimate_base(const CombinerState& state, std::span<const RecognitionFrame> frames,
                                  MetricKind metric, double delta);

/// Approximation reusing each frame's stored alignment and comparing rows
/// position-wise. Requires history tracking; supports weighted frames.
EstimationBreakdown estimate_method_a(const CombinerState& state, MetricKind metric, double delta);

/// Same GLD aggregate as Method A computed from per-cell treap queries in
/// O(S K log n). Normalization, when requested, is applied to the aggregate.
/// Requires treap tracking and unweighted frames.
EstimationBreakdown estimate_method_b(const CombinerState& state, MetricKind metric, double delta);

/// Dispatches on config.method. Not defined for kFixedStage.
EstimationBreakdown estimate(const CombinerState& state, std::span<const RecognitionFrame> frames,
                             const StopperConfig& config);

/// Stop when the estimate is not higher than the observation cost.
inline bool should_stop(double estimate, const StopperConfig& config) {
  return estimate <= config.threshold;
}

/// Feeds the clip (looped up to max_stages) through a combiner, stopping at
/// the first stage whose estimate passes should_stop.
StopOutcome run_clip(const Clip& clip, const StopperConfig& config);

StopOutcome fixed_stage_baseline(const Clip& clip, std::size_t stage, std::size_t max_stages = 30);

/// Estimates and errors for every stage 1..max_stages, without stopping.
/// The estimate trace depends only on the frames, so any threshold's outcome
/// follows from it by first crossing.
struct ClipTrace {
  std::vector<double> estimates;  // empty for kFixedStage
  std::vector<double> errors;     // ngld of R_n to the truth
};

ClipTrace trace_clip(const Clip& clip, const StopperConfig& config);

/// Outcome of `config` (threshold or fixed stage) read off a full trace.
StopOutcome outcome_from_trace(const ClipTrace& trace, const StopperConfig& config);

}  // namespace vidstop
