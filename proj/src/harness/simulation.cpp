#include "vidstop/harness/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace vidstop {
namespace {

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t count, std::size_t jobs, Body body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double parse_real(std::string_view text) {
  // from_chars for double is unavailable in older libstdc++.
  std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    throw ValidationError("invalid number '" + copy + "' in grid spec");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return {parse_real(parts[0])};
  if (parts.size() != 3) throw ValidationError("grid spec must be 'lo:hi:step' or a single value");
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  const double step = parse_real(parts[2]);
  if (!(step > 0.0)) throw ValidationError("grid step must be positive");
  if (hi < lo) throw ValidationError("grid is empty: hi < lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

std::vector<SimulationRow> simulate(const std::vector<Clip>& clips, const StopperConfig& config,
                                    std::size_t jobs) {
  if (clips.empty()) throw ValidationError("no clips to simulate");
  config.validate();
  std::vector<SimulationRow> rows(clips.size());
  parallel_for(clips.size(), jobs, [&](std::size_t i) {
    rows[i] = {clips[i].id, run_clip(clips[i], config)};
  });
  return rows;
}

void write_outcomes_csv(std::ostream& out, const std::vector<SimulationRow>& rows) {
  out << "clip_id,stop_stage,forced,final_error,estimate_at_stop\n";
  for (const auto& row : rows) {
    const auto& o = row.outcome;
    const double at_stop = o.estimate_trace.empty() ? std::nan("") : o.estimate_trace.back();
    out << row.clip_id << ',' << o.stop_stage << ',' << (o.forced ? 1 : 0) << ','
        << format_real(o.final_error) << ',' << format_real(at_stop) << '\n';
  }
}

std::vector<ClipTrace> trace_clips(const std::vector<Clip>& clips, const StopperConfig& config,
                                   std::size_t jobs) {
  if (clips.empty()) throw ValidationError("no clips to profile");
  config.validate();
  std::vector<ClipTrace> traces(clips.size());
  parallel_for(clips.size(), jobs, [&](std::size_t i) { traces[i] = trace_clip(clips[i], config); });
  return traces;
}

PerformanceProfile profile_from_traces(const std::vector<ClipTrace>& traces, const StopperConfig& config,
                                       std::vector<double> grid) {
  if (grid.empty()) throw ValidationError("profile grid is empty");
  if (traces.empty()) throw ValidationError("no clips to profile");
  std::sort(grid.begin(), grid.end());
  const bool fixed = config.method == StopMethod::kFixedStage;

  PerformanceProfile out;
  out.method = config.method;
  for (double value : grid) {
    StopperConfig point = config;
    if (fixed) {
      if (value < 1.0 || value != std::floor(value)) throw ValidationError("fixed-stage grid values must be positive integers");
      point.fixed_stage = static_cast<std::size_t>(value);
    } else {
      point.threshold = value;
    }
    ProfilePoint p;
    p.threshold = value;
    for (const auto& trace : traces) {
      const StopOutcome o = outcome_from_trace(trace, point);
      p.mean_stop_stage += static_cast<double>(o.stop_stage);
      p.mean_error += o.final_error;
      p.forced_fraction += o.forced ? 1.0 : 0.0;
    }
    const auto count = static_cast<double>(traces.size());
    p.mean_stop_stage /= count;
    p.mean_error /= count;
    p.forced_fraction /= count;
    out.points.push_back(p);
  }
  return out;
}

PerformanceProfile profile(const std::vector<Clip>& clips, const StopperConfig& config,
                           std::vector<double> grid, std::size_t jobs) {
  if (grid.empty()) throw ValidationError("profile grid is empty");
  StopperConfig base = config;
  if (base.method == StopMethod::kFixedStage) base.fixed_stage = 1;
  return profile_from_traces(trace_clips(clips, base, jobs), config, std::move(grid));
}

void write_profile_csv(std::ostream& out, const PerformanceProfile& profile) {
  out << (profile.method == StopMethod::kFixedStage ? "stage" : "threshold")
      << ",mean_stop_stage,mean_error,forced_fraction\n";
  for (const auto& p : profile.points) {
    out << format_real(p.threshold) << ',' << format_real(p.mean_stop_stage) << ','
        << format_real(p.mean_error) << ',' << format_real(p.forced_fraction) << '\n';
  }
}

}  // namespace vidstop
