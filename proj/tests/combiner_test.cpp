#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vidstop/combiner.hpp"
#include "vidstop/metrics.hpp"

using namespace vidstop;

namespace {

const Alphabet kAB("AB");
RecognitionFrame text(std::string_view s) { return from_string(s, kAB); }
std::vector<double> vals(const CharacterDistribution& d) { return {d.values().begin(), d.values().end()}; }

CombinerState full_state(std::size_t k) {
  CombinerOptions o;
  o.track_history = true;
  o.track_treaps = true;
  return CombinerState(k, o);
}

CombinedResult result_of(std::string_view s) {
  CombinerState st(2);
  st.absorb(text(s));
  return st.current_result();
}

double step_cost(const Alignment& a, const RecognitionFrame& f, const CombinedResult& r) {
  double c = 0.0;
  for (const auto& s : a.steps) {
    switch (s.kind) {
      case StepKind::kMatch:
        c += rho_c(r.rows[s.combined_row], f.rows[s.frame_row]);
        break;
      case StepKind::kGapFrame:
        c += gap_cost(r.rows[s.combined_row].values());
        break;
      case StepKind::kGapCombined:
        c += gap_cost(f.rows[s.frame_row].values());
        break;
    }
  }
  return c;
}

void check_invariants(const CombinerState& st, const std::vector<RecognitionFrame>& frames) {
  const auto& r = st.result();
  const std::size_t width = st.classes() + 1;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const auto id = r.row_ids[j];
    const auto sums = st.weighted_sums(id);
    double row_sum = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      row_sum += r.rows[j][k];
      CHECK(std::abs(r.rows[j][k] * st.weight_sum() - sums[k]) <= 1e-9);
      if (st.options().track_treaps) {
        const auto t = st.cell(id, k).totals();
        CHECK(t.count == st.stage());
        CHECK(std::abs(t.sum - sums[k]) <= 1e-9);
      }
    }
    CHECK(std::abs(row_sum - 1.0) <= 1e-9);
  }
  if (st.options().track_history) {
    std::vector<std::vector<double>> rebuilt(st.row_id_count(), std::vector<double>(width, 0.0));
    for (std::size_t i = 0; i < st.history().size(); ++i) {
      std::vector<bool> seen(st.row_id_count(), false);
      const auto& h = st.history()[i];
      for (std::size_t e = 0; e < h.size(); ++e) {
        seen[h.rows[e]] = true;
        for (std::size_t k = 0; k < width; ++k) rebuilt[h.rows[e]][k] += st.weights()[i] * h.value(e)[k];
      }
      for (std::size_t id = 0; id < seen.size(); ++id) {
        if (!seen[id]) rebuilt[id][0] += st.weights()[i];
      }
    }
    for (RowId id : r.row_ids) {
      for (std::size_t k = 0; k < width; ++k) CHECK(std::abs(rebuilt[id][k] - st.weighted_sums(id)[k]) <= 1e-9);
    }
  }
  std::size_t total_rows = 0;
  for (const auto& f : frames) total_rows += f.length();
  CHECK(r.size() <= total_rows);
}

}  // namespace

TEST_CASE("align examples") {
  auto ab = result_of("AB");
  auto same = align(text("AB"), ab);
  REQUIRE(same.steps.size() == 2);
  CHECK(same.steps[0] == AlignStep{StepKind::kMatch, 0, 0});
  CHECK(same.steps[1] == AlignStep{StepKind::kMatch, 1, 1});
  CHECK(same.cost == 0.0);

  auto shorter = align(text("A"), ab);
  REQUIRE(shorter.steps.size() == 2);
  CHECK(shorter.steps[0] == AlignStep{StepKind::kMatch, 0, 0});
  CHECK(shorter.steps[1] == AlignStep{StepKind::kGapFrame, 1, kNoRow});
  CHECK(shorter.cost == 1.0);

  auto none = align(text(""), ab);
  REQUIRE(none.steps.size() == 2);
  CHECK(none.steps[0].kind == StepKind::kGapFrame);
  CHECK(none.steps[1].kind == StepKind::kGapFrame);

  auto longer = align(text("AAB"), ab);
  CHECK(longer.cost == 1.0);
  CHECK(longer.steps.size() == 3);

  CHECK_THROWS_AS(align(from_string("A", Alphabet("ABC")), ab), ValidationError);
}

TEST_CASE("align prefers a match on ties") {
  // "A" vs "B": substitute (1) ties with nothing cheaper; delete+insert costs 2.
  auto a = align(text("A"), result_of("B"));
  REQUIRE(a.steps.size() == 1);
  CHECK(a.steps[0].kind == StepKind::kMatch);
  // "A" vs "AA": both rows tie for the match; the earliest one wins.
  auto b = align(text("A"), result_of("AA"));
  REQUIRE(b.steps.size() == 2);
  CHECK(b.steps[0] == AlignStep{StepKind::kMatch, 0, 0});
  CHECK(b.steps[1].kind == StepKind::kGapFrame);
}

TEST_CASE("property: alignments are optimal and cover both sequences") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 500; ++t) {
    const std::size_t k = 1 + rng() % 4;
    CombinerState st(k);
    st.absorb(oracle::random_frame(rng, k, 6));
    st.absorb(oracle::random_frame(rng, k, 6));
    const auto frame = oracle::random_frame(rng, k, 6);
    const auto& result = st.result();
    const auto a = align(frame, result);
    CHECK(std::abs(a.cost - gld(result.rows, frame.rows)) <= 1e-12);
    CHECK(std::abs(step_cost(a, frame, result) - a.cost) <= 1e-12);
    std::size_t next_row = 0, next_frame = 0;
    for (const auto& s : a.steps) {
      if (s.kind != StepKind::kGapCombined) CHECK(s.combined_row == next_row++);
      else CHECK(s.combined_row == next_row);
      if (s.kind != StepKind::kGapFrame) CHECK(s.frame_row == next_frame++);
    }
    CHECK(next_row == result.size());
    CHECK(next_frame == frame.length());
  }
}

TEST_CASE("absorb examples") {
  auto st = full_state(2);
  st.absorb(text("AB"));
  st.absorb(text("AB"));
  CHECK(st.current_result().rows == text("AB").rows);

  CombinerState ab(2);
  ab.absorb(text("A"));
  ab.absorb(text("B"));
  auto r = ab.current_result();
  REQUIRE(r.size() == 1);
  CHECK(vals(r.rows[0]) == std::vector<double>{0, 0.5, 0.5});

  CombinerState shrink(2);
  shrink.absorb(text("AB"));
  shrink.absorb(text("A"));
  auto s = shrink.current_result();
  REQUIRE(s.size() == 2);
  CHECK(vals(s.rows[0]) == std::vector<double>{0, 1, 0});
  CHECK(vals(s.rows[1]) == std::vector<double>{0.5, 0, 0.5});
}

TEST_CASE("current_result after one frame and before any") {
  CombinerState st(2);
  CHECK_THROWS_AS(st.current_result(), std::logic_error);
  st.absorb(text("AB"));
  auto snapshot = st.current_result();
  CHECK(snapshot.rows == text("AB").rows);
  st.absorb(text("B"));
  CHECK(snapshot.rows == text("AB").rows);
}

TEST_CASE("new rows keep ids stable and backfill empty history") {
  auto st = full_state(2);
  st.absorb(text("B"));
  st.absorb(text("B"));
  st.absorb(text("AB"));
  const auto& r = st.result();
  REQUIRE(r.size() == 2);
  CHECK(r.row_ids[0] == 1u);  // created at stage 3, displayed first
  CHECK(r.row_ids[1] == 0u);
  CHECK(r.rows[0][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.rows[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(st.cell(1, 0).totals().count == 3);
  CHECK(st.cell(1, 0).below(0.5).count == 1);  // only stage 3 had a symbol there
  check_invariants(st, {text("B"), text("B"), text("AB")});
}

TEST_CASE("combine_candidate examples") {
  CombinerState one(2);
  one.absorb(text("AB"));
  CHECK(one.combine_candidate(text("AB")) == one.current_result());

  CombinerState ab(2);
  ab.absorb(text("A"));
  ab.absorb(text("B"));
  auto c = ab.combine_candidate(text("A"));
  REQUIRE(c.size() == 1);
  CHECK(c.rows[0][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c.rows[0][2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(ab.stage() == 2);

  auto e = ab.combine_candidate(text(""));
  REQUIRE(e.size() == 1);
  CHECK(e.rows[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(e.rows[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("weighted frames and modes") {
  CombinerState weighted(2);
  auto a = text("A");
  a.weight = 3.0;
  weighted.absorb(a);
  weighted.absorb(text("B"));
  CHECK(weighted.result().rows[0][1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_FALSE(weighted.unweighted());

  auto treaps = full_state(2);
  CHECK_THROWS_AS(treaps.absorb(a), UnsupportedModeError);
  CHECK(treaps.stage() == 0);

  CombinerState plain(2);
  plain.absorb(text("A"));
  CHECK_THROWS_AS(plain.cell(0, 0), UnsupportedModeError);
  CHECK_THROWS_AS(plain.absorb(from_string("A", Alphabet("ABC"))), ValidationError);

  auto zero = text("A");
  zero.weight = 0.0;
  CombinerState fresh(2);
  CHECK_THROWS_AS(fresh.absorb(zero), ValidationError);
}

TEST_CASE("property: bookkeeping invariants on random streams") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const std::size_t k = 1 + rng() % 5;
    const bool weighted = t % 3 == 0;
    CombinerOptions o;
    o.track_history = true;
    o.track_treaps = !weighted;
    CombinerState st(k, o);
    std::vector<RecognitionFrame> frames;
    std::uniform_real_distribution<double> wd(0.2, 3.0);
    for (std::size_t n = 0; n < 1 + rng() % 10; ++n) {
      frames.push_back(oracle::random_frame(rng, k, 6, weighted ? wd(rng) : 1.0));
      st.absorb(frames.back());
      check_invariants(st, frames);
    }
  }
}

TEST_CASE("property: a constant stream reproduces the frame exactly") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 1 + rng() % 6;
    const auto frame = oracle::random_frame(rng, k, 8);
    auto st = full_state(k);
    for (int n = 0; n < 30; ++n) {
      st.absorb(frame);
      REQUIRE(st.length() == frame.length());
      CHECK(st.result().rows == frame.rows);
    }
  }
}
