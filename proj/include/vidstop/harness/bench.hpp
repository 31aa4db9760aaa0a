#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "vidstop/core.hpp"
#include "vidstop/metrics.hpp"
#include "vidstop/stoppers.hpp"

namespace vidstop {

struct BenchConfig {
  std::vector<StopMethod> methods{StopMethod::kBase, StopMethod::kMethodA, StopMethod::kMethodB};
  std::size_t repeats = 1;
  MetricKind metric = MetricKind::kNgld;
  double delta = 0.1;
  std::size_t max_stages = 30;
};

struct TimingRow {
  StopMethod method;
  std::size_t stage;
  double mean_seconds;  // absorb + estimate at this stage
  std::size_t samples;
};

struct TimingReport {
  std::vector<TimingRow> rows;  // grouped by method, then stage

  /// Mean seconds for (method, stage); throws when absent.
  double at(StopMethod method, std::size_t stage) const;
};

/// Times absorb + estimate per stage, single-threaded. Each method runs on
/// its own combiner with only the bookkeeping it needs.
TimingReport bench(const std::vector<Clip>& clips, const BenchConfig& config);

/// method,stage,mean_seconds,samples
void write_timing_csv(std::ostream& out, const TimingReport& report);

}  // namespace vidstop
