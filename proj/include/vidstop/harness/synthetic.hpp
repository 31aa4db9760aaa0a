#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vidstop/core.hpp"

namespace vidstop {

inline constexpr const char* kDefaultAlphabet = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Parameters of the synthetic recognizer: every frame is the truth string
/// passed through independent per-character edit noise, then softened by
/// spreading `confusion_mass` uniformly over the wrong classes.
struct SyntheticConfig {
  std::size_t clip_count = 100;
  std::size_t frames_per_clip = 30;
  std::size_t text_length = 15;
  std::string alphabet = kDefaultAlphabet;
  double p_sub = 0.1;
  double p_del = 0.03;
  double p_ins = 0.03;
  double confusion_mass = 0.3;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Deterministic for a given config.
std::vector<Clip> generate_synthetic(const SyntheticConfig& config);

}  // namespace vidstop
