#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vidstop/core.hpp"
#include "vidstop/stoppers.hpp"

namespace vidstop {

/// "%.9g"; the float format of every CSV this harness writes.
std::string format_real(double value);

/// Grid spec "lo:hi:step" (inclusive of hi when step divides the range) or a
/// single value. Throws on an empty or malformed grid.
std::vector<double> parse_grid(std::string_view spec);

struct SimulationRow {
  std::string clip_id;
  StopOutcome outcome;
};

/// One outcome per clip, in input order. `jobs` worker threads (0 = hardware).
std::vector<SimulationRow> simulate(const std::vector<Clip>& clips, const StopperConfig& config,
                                    std::size_t jobs = 1);

/// clip_id,stop_stage,forced,final_error,estimate_at_stop
void write_outcomes_csv(std::ostream& out, const std::vector<SimulationRow>& rows);

struct ProfilePoint {
  double threshold = 0.0;  // the stage number for the fixed-stage stopper
  double mean_stop_stage = 0.0;
  double mean_error = 0.0;
  double forced_fraction = 0.0;
};

struct PerformanceProfile {
  StopMethod method = StopMethod::kMethodA;
  std::vector<ProfilePoint> points;  // sorted by threshold
};

/// Sweeps `grid` (thresholds, or stages for kFixedStage). Each clip is traced
/// once; every grid point is read off the traces by first crossing.
PerformanceProfile profile(const std::vector<Clip>& clips, const StopperConfig& config,
                           std::vector<double> grid, std::size_t jobs = 1);

/// Same, over traces computed beforehand with trace_clip.
PerformanceProfile profile_from_traces(const std::vector<ClipTrace>& traces, const StopperConfig& config,
                                       std::vector<double> grid);

std::vector<ClipTrace> trace_clips(const std::vector<Clip>& clips, const StopperConfig& config,
                                   std::size_t jobs = 1);

/// threshold,mean_stop_stage,mean_error,forced_fraction ("stage" header for fixed).
void write_profile_csv(std::ostream& out, const PerformanceProfile& profile);

}  // namespace vidstop
