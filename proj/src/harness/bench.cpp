#include "vidstop/harness/bench.hpp"

#include <chrono>
#include <ostream>
#include <stdexcept>

#include "vidstop/harness/simulation.hpp"

namespace vidstop {

double TimingReport::at(StopMethod method, std::size_t stage) const {
  for (const auto& row : rows) {
    if (row.method == method && row.stage == stage) return row.mean_seconds;
  }
  throw std::out_of_range("no timing row for the requested method and stage");
}

TimingReport bench(const std::vector<Clip>& clips, const BenchConfig& config) {
  if (clips.empty()) throw ValidationError("no clips to benchmark");
  if (config.repeats == 0) throw ValidationError("repeats must be at least 1");
  if (config.max_stages == 0) throw ValidationError("max_stages must be positive");
  for (StopMethod m : config.methods) {
    if (m == StopMethod::kFixedStage) throw ValidationError("the fixed-stage stopper has nothing to time");
  }

  using clock = std::chrono::steady_clock;
  volatile double sink = 0.0;
  TimingReport report;
  for (StopMethod method : config.methods) {
    StopperConfig stopper;
    stopper.method = method;
    stopper.metric = config.metric;
    stopper.delta = config.delta;

    std::vector<double> total(config.max_stages, 0.0);
    std::vector<std::size_t> samples(config.max_stages, 0);
    for (const Clip& clip : clips) {
      if (clip.frames.empty()) throw ValidationError("clip '" + clip.id + "' has no frames");
      for (std::size_t r = 0; r < config.repeats; ++r) {
        CombinerState state(clip.alphabet.size(), bookkeeping_for(method));
        std::vector<RecognitionFrame> observed;
        for (std::size_t n = 1; n <= config.max_stages; ++n) {
          const RecognitionFrame& frame = clip.frames[(n - 1) % clip.frames.size()];
          // The copy kept for Base is bookkeeping of its own, so it is timed too.
          const auto t0 = clock::now();
          state.absorb(frame);
          if (method == StopMethod::kBase) observed.push_back(frame);
          sink = sink + estimate(state, observed, stopper).estimate;
          const auto t1 = clock::now();
          total[n - 1] += std::chrono::duration<double>(t1 - t0).count();
          ++samples[n - 1];
        }
      }
    }
    for (std::size_t n = 1; n <= config.max_stages; ++n) {
      report.rows.push_back({method, n, total[n - 1] / static_cast<double>(samples[n - 1]), samples[n - 1]});
    }
  }
  return report;
}

void write_timing_csv(std::ostream& out, const TimingReport& report) {
  out << "method,stage,mean_seconds,samples\n";
  for (const auto& row : report.rows) {
    out << method_name(row.method) << ',' << row.stage << ',' << format_real(row.mean_seconds) << ','
        << row.samples << '\n';
  }
}

}  // namespace vidstop
