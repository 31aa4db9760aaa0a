#include "vidstop/harness/synthetic.hpp"

#include <cstdio>
#include <random>

namespace vidstop {
namespace {

// Explicit conversions keep the output identical across standard libraries;
// std::uniform_*_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> soft_row(std::size_t cls, std::size_t k, double confusion) {
  std::vector<double> row(k, 0.0);
  if (k == 1) {
    row[0] = 1.0;
    return row;
  }
  const double spread = confusion / static_cast<double>(k - 1);
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    row[c] = c + 1 == cls ? 1.0 - confusion : spread;
    sum += row[c];
  }
  for (double& v : row) v /= sum;
  return row;
}

}  // namespace

void SyntheticConfig::validate() const {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(p_sub) || !in_unit(p_del) || !in_unit(p_ins)) {
    throw ValidationError("noise probabilities must lie in [0, 1]");
  }
  if (p_sub + p_del + p_ins > 1.0 + 1e-12) throw ValidationError("p_sub + p_del + p_ins must not exceed 1");
  if (!(confusion_mass >= 0.0 && confusion_mass < 1.0)) throw ValidationError("confusion_mass must lie in [0, 1)");
  if (frames_per_clip == 0) throw ValidationError("frames_per_clip must be positive");
  Alphabet check(alphabet);
  (void)check;
}

std::vector<Clip> generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  const Alphabet alphabet(config.alphabet);
  const std::size_t k = alphabet.size();
  Rng rng(config.seed);

  auto random_class = [&] { return 1 + rng.below(k); };
  auto wrong_class = [&](std::size_t cls) {
    if (k == 1) return cls;
    const std::size_t pick = 1 + rng.below(k - 1);
    return pick >= cls ? pick + 1 : pick;
  };

  std::vector<Clip> clips;
  clips.reserve(config.clip_count);
  for (std::size_t c = 0; c < config.clip_count; ++c) {
    Clip clip;
    char id[32];
    std::snprintf(id, sizeof(id), "syn-%05zu", c);
    clip.id = id;
    clip.alphabet = alphabet;
    std::vector<std::size_t> truth;
    for (std::size_t t = 0; t < config.text_length; ++t) {
      truth.push_back(random_class());
      clip.truth.push_back(alphabet.symbol_of(truth.back()));
    }

    for (std::size_t f = 0; f < config.frames_per_clip; ++f) {
      std::vector<std::vector<double>> rows;
      for (std::size_t cls : truth) {
        const double u = rng.uniform();
        if (u < config.p_sub) {
          rows.push_back(soft_row(wrong_class(cls), k, config.confusion_mass));
        } else if (u < config.p_sub + config.p_del) {
          continue;
        } else if (u < config.p_sub + config.p_del + config.p_ins) {
          rows.push_back(soft_row(cls, k, config.confusion_mass));
          rows.push_back(soft_row(random_class(), k, config.confusion_mass));
        } else {
          rows.push_back(soft_row(cls, k, config.confusion_mass));
        }
      }
      clip.frames.push_back(make_frame(rows, k));
    }
    clips.push_back(std::move(clip));
  }
  return clips;
}

}  // namespace vidstop
