#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vidstop/treap.hpp"

using namespace vidstop;

TEST_CASE("insert aggregates") {
  MultisetIndex zeros;
  zeros.insert(0.0, 3);
  CHECK(zeros.totals().count == 3);
  CHECK(zeros.totals().sum == 0.0);

  MultisetIndex ones;
  ones.insert(1.0, 1);
  ones.insert(1.0, 2);
  CHECK(ones.distinct() == 1);
  CHECK(ones.totals().count == 3);
  CHECK(ones.totals().sum == 3.0);

  MultisetIndex mixed;
  mixed.insert(0.2, 1);
  mixed.insert(0.7, 2);
  CHECK(mixed.totals().count == 3);
  CHECK(mixed.totals().sum == doctest::Approx(1.6).epsilon(1e-15));

  CHECK_THROWS_AS(mixed.insert(0.5, 0), ValidationError);
}

TEST_CASE("below is strict") {
  MultisetIndex empty;
  CHECK(empty.below(10.0).count == 0);
  CHECK(empty.below(10.0).sum == 0.0);
  CHECK(empty.totals().count == 0);
  CHECK(empty.depth() == 0);

  MultisetIndex idx;
  idx.insert(0.0, 2);
  idx.insert(1.0, 1);
  CHECK(idx.below(0.5).count == 2);
  CHECK(idx.below(0.5).sum == 0.0);
  CHECK(idx.below(0.0).count == 0);
  CHECK(idx.below(1.0).count == 2);
  CHECK(idx.below(1.5).count == 3);

  MultisetIndex half;
  half.insert(0.5, 4);
  CHECK(half.totals().count == 4);
  CHECK(half.totals().sum == 2.0);
}

TEST_CASE("property: below matches a linear scan") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int workload = 0; workload < 200; ++workload) {
    MultisetIndex idx(rng());
    oracle::Multiset ref;
    const int inserts = 1 + static_cast<int>(rng() % 200);
    for (int i = 0; i < inserts; ++i) {
      // Draw from a coarse grid half the time so equal keys merge.
      const double v = rng() % 2 ? std::round(unit(rng) * 10.0) / 10.0 : unit(rng);
      const std::size_t m = 1 + rng() % 5;
      idx.insert(v, m);
      ref.insert(v, m);
    }
    REQUIRE(idx.check_invariants());
    for (int q = 0; q < 20; ++q) {
      const double bound = q == 0 ? 0.5 : unit(rng) * 1.2 - 0.1;
      const auto got = idx.below(bound);
      const auto [count, sum] = ref.below(bound);
      CHECK(got.count == count);
      CHECK(std::abs(got.sum - sum) <= 1e-12);
    }
  }
}

TEST_CASE("depth stays logarithmic") {
  MultisetIndex idx(7);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) idx.insert(unit(rng), 1);
  CHECK(idx.distinct() == 10000);
  CHECK(idx.depth() <= 60);
  CHECK(idx.check_invariants());

  // Sorted inserts are the adversarial case for an unbalanced tree.
  MultisetIndex sorted(9);
  for (int i = 0; i < 10000; ++i) sorted.insert(i, 1);
  CHECK(sorted.depth() <= 60);
}

TEST_CASE("same seed, same shape") {
  MultisetIndex a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    a.insert(i * 0.37 - std::floor(i * 0.37), 1);
    b.insert(i * 0.37 - std::floor(i * 0.37), 1);
  }
  CHECK(a.depth() == b.depth());
}
