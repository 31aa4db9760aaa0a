// vidstop: synthetic clip generation, stopping simulation, threshold-sweep
// profiles and per-stage timing.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vidstop/harness/bench.hpp"
#include "vidstop/harness/clip_io.hpp"
#include "vidstop/harness/simulation.hpp"
#include "vidstop/harness/synthetic.hpp"

namespace {

struct StopperFlags {
  std::string method = "a";
  std::string metric = "ngld";
  double delta = 0.1;
  double threshold = 0.0;
  std::size_t stage = 1;
  std::size_t max_stages = 30;

  vidstop::StopperConfig config() const {
    vidstop::StopperConfig c;
    c.method = vidstop::parse_method(method);
    c.metric = vidstop::parse_metric(metric);
    c.delta = delta;
    c.threshold = threshold;
    c.fixed_stage = stage;
    c.max_stages = max_stages;
    return c;
  }
};

void add_stopper_flags(CLI::App* cmd, StopperFlags& flags, bool with_threshold) {
  cmd->add_option("--method", flags.method, "Stopping method")
      ->check(CLI::IsMember({"base", "a", "b", "fixed"}))
      ->capture_default_str();
  cmd->add_option("--metric", flags.metric, "Distance between results")
      ->check(CLI::IsMember({"gld", "ngld"}))
      ->capture_default_str();
  cmd->add_option("--delta", flags.delta, "Additive term of the expected-distance estimate")->capture_default_str();
  if (with_threshold) {
    cmd->add_option("--threshold", flags.threshold, "Observation cost")->capture_default_str();
    cmd->add_option("--stage", flags.stage, "Stop stage for --method fixed")->capture_default_str();
  }
  cmd->add_option("--max-stages", flags.max_stages, "Forced stop stage (clips are looped)")->capture_default_str();
}

// Writes to the named file, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw vidstop::ValidationError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<vidstop::Clip> read_input(const std::string& path) {
  vidstop::LoadDiagnostics diagnostics;
  auto clips = vidstop::load_clips(path, &diagnostics);
  if (diagnostics.renormalized_rows > 0) {
    std::cerr << "warning: " << diagnostics.renormalized_rows
              << " rows did not sum to 1 within 1e-6 and were renormalized\n";
  }
  return clips;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime combination and stopping for per-frame text recognition results"};
  app.require_subcommand(1);

  std::string input, output;
  std::size_t jobs = 0;

  vidstop::SyntheticConfig synth;
  auto* gen = app.add_subcommand("gen", "Generate synthetic clips as JSON Lines");
  gen->add_option("-o,--output", output, "Output file (stdout if omitted)");
  gen->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  gen->add_option("--clips", synth.clip_count, "Number of clips")->capture_default_str();
  gen->add_option("--frames", synth.frames_per_clip, "Frames per clip")->capture_default_str();
  gen->add_option("--length", synth.text_length, "Truth string length")->capture_default_str();
  gen->add_option("--alphabet", synth.alphabet, "Alphabet symbols")->capture_default_str();
  gen->add_option("--p-sub", synth.p_sub, "Per-character substitution probability")->capture_default_str();
  gen->add_option("--p-del", synth.p_del, "Per-character deletion probability")->capture_default_str();
  gen->add_option("--p-ins", synth.p_ins, "Per-character insertion probability")->capture_default_str();
  gen->add_option("--confusion", synth.confusion_mass, "Membership mass spread over wrong classes")
      ->capture_default_str();

  StopperFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Run the stopper on every clip; CSV per clip");
  sim->add_option("-i,--input", input, "Clip file (JSON Lines)")->required();
  sim->add_option("-o,--output", output, "Output CSV (stdout if omitted)");
  sim->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  add_stopper_flags(sim, sim_flags, true);

  StopperFlags prof_flags;
  std::string grid = "0:0.2:0.005";
  auto* prof = app.add_subcommand("profile", "Sweep thresholds (or stages for fixed); CSV per grid point");
  prof->add_option("-i,--input", input, "Clip file (JSON Lines)")->required();
  prof->add_option("-o,--output", output, "Output CSV (stdout if omitted)");
  prof->add_option("--thresholds", grid, "Grid lo:hi:step, or a single value")->capture_default_str();
  prof->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
  add_stopper_flags(prof, prof_flags, false);

  StopperFlags bench_flags;
  std::vector<std::string> methods{"base", "a", "b"};
  std::size_t repeats = 1;
  auto* bch = app.add_subcommand("bench", "Per-stage absorb+estimate timing; CSV per method and stage");
  bch->add_option("-i,--input", input, "Clip file (JSON Lines)")->required();
  bch->add_option("-o,--output", output, "Output CSV (stdout if omitted)");
  bch->add_option("--methods", methods, "Methods to time")
      ->check(CLI::IsMember({"base", "a", "b"}))
      ->delimiter(',')
      ->capture_default_str();
  bch->add_option("--repeats", repeats, "Repetitions per clip")->capture_default_str();
  bch->add_option("--metric", bench_flags.metric, "Distance between results")
      ->check(CLI::IsMember({"gld", "ngld"}))
      ->capture_default_str();
  bch->add_option("--delta", bench_flags.delta, "Additive term of the estimate")->capture_default_str();
  bch->add_option("--max-stages", bench_flags.max_stages, "Stages per clip")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto clips = vidstop::generate_synthetic(synth);
      Output out(output);
      vidstop::write_clips(out.stream(), clips);
    } else if (sim->parsed()) {
      const auto config = sim_flags.config();
      config.validate();
      const auto clips = read_input(input);
      const auto rows = vidstop::simulate(clips, config, jobs);
      Output out(output);
      vidstop::write_outcomes_csv(out.stream(), rows);
    } else if (prof->parsed()) {
      const auto config = prof_flags.config();
      const auto clips = read_input(input);
      const auto result = vidstop::profile(clips, config, vidstop::parse_grid(grid), jobs);
      Output out(output);
      vidstop::write_profile_csv(out.stream(), result);
    } else if (bch->parsed()) {
      vidstop::BenchConfig config;
      config.methods.clear();
      for (const auto& m : methods) config.methods.push_back(vidstop::parse_method(m));
      config.repeats = repeats;
      config.metric = vidstop::parse_metric(bench_flags.metric);
      config.delta = bench_flags.delta;
      config.max_stages = bench_flags.max_stages;
      const auto clips = read_input(input);
      const auto report = vidstop::bench(clips, config);
      Output out(output);
      vidstop::write_timing_csv(out.stream(), report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
