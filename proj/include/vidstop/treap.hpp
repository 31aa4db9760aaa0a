#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vidstop {

/// Aggregate over a subset of stored values: multiplicity count and
/// value-weighted sum.
struct BelowQuery {
  std::size_t count = 0;
  double sum = 0.0;
};

/// Treap over real keys with multiplicities. Each node caches the count and
/// sum of its subtree so that "how many values, and what total, lie strictly
/// below x" is answered along a single root-to-leaf path.
///
/// Priorities come from a splitmix64 stream seeded at construction, so two
/// indices built from the same seed and insert sequence have identical shape.
class MultisetIndex {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x5eed'7ea9'0000'0001ULL;

  explicit MultisetIndex(std::uint64_t seed = kDefaultSeed) : rng_state_(seed) {}

  /// Adds `multiplicity` copies of `value`. Throws on multiplicity 0 or NaN.
  void insert(double value, std::size_t multiplicity = 1);

  /// Count and sum of stored values strictly less than `bound`.
  BelowQuery below(double bound) const;

  /// Count and sum over everything stored.
  BelowQuery totals() const;

  std::size_t distinct() const { return nodes_.size(); }
  bool empty() const { return root_ < 0; }

  /// Longest root-to-leaf path in nodes; 0 for an empty index.
  std::size_t depth() const;

  /// Recomputes every cached aggregate and checks both orderings.
  bool check_invariants() const;

 private:
  struct Node {
    double value;
    std::size_t multiplicity;
    std::uint64_t priority;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::size_t count;
    double sum;
  };

  std::int32_t insert_at(std::int32_t t, double value, std::size_t multiplicity);
  std::int32_t rotate_left(std::int32_t t);
  std::int32_t rotate_right(std::int32_t t);
  void pull(std::int32_t t);
  std::uint64_t next_priority();

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::uint64_t rng_state_;
};

}  // namespace vidstop
