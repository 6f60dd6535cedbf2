#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hypernorm/catalog.hpp"
#include "hypernorm/classify.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/rng.hpp"

using namespace hypernorm;

namespace {

HypergraphPair relabeled(const HypergraphPair& h, CounterRng& rng) {
  std::vector<std::vector<int>> maps;
  for (int i = 0; i < h.k; ++i) {
    std::vector<int> perm(static_cast<std::size_t>(h.dims[static_cast<std::size_t>(i)]));
    for (std::size_t v = 0; v < perm.size(); ++v) perm[v] = static_cast<int>(v);
    for (std::size_t v = perm.size(); v > 1; --v) {
      std::swap(perm[v - 1], perm[rng.below(v)]);
    }
    maps.push_back(perm);
  }
  HypergraphPair out = make_zero_pair(h.k, h.dims);
  const auto apply = [&](const Omega& w) {
    Omega image(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      image[i] = maps[i][static_cast<std::size_t>(w[i])];
    }
    return image;
  };
  for (const auto& [w, v] : h.alpha) out.alpha[apply(w)] = v;
  for (const auto& [w, v] : h.beta) out.beta[apply(w)] = v;
  return out;
}

}  // namespace

TEST_CASE("catalog norming pairs classify as their advertised type") {
  for (const double p : {1.0, 2.0, 3.0}) {
    const ClassificationResult r = classify(make_lp(p));
    CHECK(r.verdict == Verdict::TypeI);
    CHECK(r.s == doctest::Approx(p).epsilon(1e-12));
  }
  for (const int k : {1, 2, 3}) {
    CHECK(classify(make_gowers(k)).verdict == Verdict::TypeII);
  }
  CHECK(classify(make_schatten(4)).verdict == Verdict::TypeII);
  CHECK(classify(make_schatten(6)).verdict == Verdict::TypeII);
  for (const double p : {0.5, 1.0, 2.5}) {
    const ClassificationResult r = classify(make_complete(p, {2, 2}));
    CHECK(r.verdict == Verdict::TypeI);
    CHECK(r.s == doctest::Approx(2.0 * p).epsilon(1e-12));
  }
}

TEST_CASE("tensor products of norming pairs stay consistent with norming") {
  CHECK(classify(tensor(make_lp(2), make_lp(2))).verdict == Verdict::TypeI);
  CHECK(classify(tensor(make_gowers(2), make_gowers(2))).verdict ==
        Verdict::TypeII);
  CHECK(classify(tensor(make_schatten(4), make_schatten(4))).verdict ==
        Verdict::TypeII);
}

TEST_CASE("non-norming pairs are rejected with witnesses") {
  const ClassificationResult three_s4 = classify(scale(make_schatten(4), 3.0));
  CHECK(three_s4.verdict == Verdict::NotSemiNorming);
  bool witness_mentions_value = false;
  for (const CheckRecord& c : three_s4.checks) {
    if (!c.passed && c.witness.find("3") != std::string::npos) {
      witness_mentions_value = true;
    }
  }
  CHECK(witness_mentions_value);

  CHECK(classify(scale(make_gowers(2), 2.0)).verdict ==
        Verdict::NotSemiNorming);
  CHECK(classify(make_sqrt2_pair()).verdict == Verdict::NotSemiNorming);
}

TEST_CASE("verdicts are isomorphism-invariant") {
  CounterRng rng(2101, 0);
  const std::vector<HypergraphPair> pool = {
      make_lp(2),          make_gowers(2),          make_gowers(3),
      make_schatten(4),    make_complete(1.5, {2, 2}),
      make_sqrt2_pair(),   scale(make_gowers(2), 2.0)};
  for (const HypergraphPair& h : pool) {
    const Verdict base = classify(h).verdict;
    for (int t = 0; t < 5; ++t) {
      CHECK(classify(relabeled(h, rng)).verdict == base);
    }
  }
}

TEST_CASE("disjoint self-unions keep the Type I verdict") {
  for (const double p : {1.0, 2.0}) {
    const HypergraphPair h = make_lp(p);
    const ClassificationResult joined = classify(disjoint_union(h, h));
    CHECK(joined.verdict == Verdict::TypeI);
    CHECK(joined.s == doctest::Approx(p).epsilon(1e-12));
  }
  const HypergraphPair k22 = make_complete(1.0, {2, 2});
  CHECK(classify(disjoint_union(k22, k22)).verdict == Verdict::TypeI);
  // Unions of Type II pairs remain consistent with semi-norming too.
  const HypergraphPair u2 = make_gowers(2);
  CHECK(classify(disjoint_union(u2, u2)).verdict == Verdict::TypeII);
}

TEST_CASE("degenerate extensions classify as Type II") {
  const DegenerateExtension ext = make_degenerate_extension(make_lp(2.0), 1);
  CHECK(classify(ext.pair).verdict == Verdict::TypeII);
}

TEST_CASE("mixed-shape supports are rejected") {
  // alpha = beta on one cell but {0,1} on another: neither case of the
  // dichotomy holds globally.
  HypergraphPair h = make_zero_pair(1, {2});
  h.alpha[{0}] = 1.0;
  h.beta[{0}] = 1.0;
  h.alpha[{1}] = 1.0;
  CHECK(classify(h).verdict == Verdict::NotSemiNorming);

  // Type I shape with s < 1 fails the exponent-sum floor.
  HypergraphPair tiny = make_zero_pair(1, {1});
  tiny.alpha[{0}] = 0.25;
  tiny.beta[{0}] = 0.25;
  CHECK(classify(tiny).verdict == Verdict::NotSemiNorming);

  // Zero-one pair that is not self-conjugate: alpha-only support.
  HypergraphPair lopsided = make_zero_pair(1, {2});
  lopsided.alpha[{0}] = 1.0;
  lopsided.alpha[{1}] = 1.0;
  CHECK(classify(lopsided).verdict == Verdict::NotSemiNorming);

  CHECK_THROWS_AS(classify(sub(make_lp(2), scale(make_lp(2), 2.0))),
                  ValidationError);
}

TEST_CASE("degree profiles report exact fiber sums") {
  const DegreeProfile u2 = degree_profile(make_gowers(2));
  CHECK(u2.regular);
  for (const AxisDegree& axis : u2.axes) {
    CHECK(axis.regular);
    CHECK(axis.d == doctest::Approx(1.0));
    for (const double s : axis.alpha_sums) CHECK(s == doctest::Approx(1.0));
    for (const double s : axis.beta_sums) CHECK(s == doctest::Approx(1.0));
  }
  CHECK(degree_profile(make_schatten(4)).regular);

  HypergraphPair rowy = make_zero_pair(2, {2, 2});
  rowy.alpha[{0, 0}] = 1.0;
  rowy.alpha[{0, 1}] = 1.0;
  rowy.beta[{0, 0}] = 1.0;
  rowy.beta[{0, 1}] = 1.0;
  CHECK_FALSE(degree_profile(rowy).regular);
}

TEST_CASE("the spreading bound enumerates sub-boxes literally") {
  CHECK(check_spreading(make_gowers(2)).passed);

  const SpreadingResult s6 = check_spreading(make_schatten(6));
  CHECK(s6.passed);
  CHECK(s6.worst_ratio <= s6.pair_ratio + 1e-12);
  CHECK(s6.pair_ratio == doctest::Approx(6.0 / 5.0));

  // One support cell in a 2x2 box: the singleton sub-box violates the bound.
  HypergraphPair isolated = make_zero_pair(2, {2, 2});
  isolated.alpha[{0, 0}] = 1.0;
  isolated.beta[{0, 0}] = 1.0;
  const SpreadingResult bad = check_spreading(isolated);
  CHECK_FALSE(bad.passed);
  CHECK(bad.pair_ratio == doctest::Approx(2.0 / 3.0));
  CHECK(bad.worst_ratio == doctest::Approx(2.0));
  REQUIRE(bad.worst_subbox.size() == 2);
  CHECK(bad.worst_subbox[0] == std::vector<int>{0});
  CHECK(bad.worst_subbox[1] == std::vector<int>{0});

  // Budget guard.
  CHECK_THROWS_AS(check_spreading(make_complete(1.0, {12, 12}), 20),
                  BudgetError);
}

TEST_CASE("spreading inside classify works per component") {
  // Singleton sub-boxes have a vacuous bound, so U_1 passes standalone.
  CHECK(check_spreading(make_gowers(1)).passed);

  // A doubled union fails the literal global bound at one block (4/3 beats
  // 8/7), yet each component is fine - classify checks per component.
  const HypergraphPair doubled =
      disjoint_union(make_gowers(2), make_gowers(2));
  const SpreadingResult global = check_spreading(doubled);
  CHECK_FALSE(global.passed);
  CHECK(global.worst_ratio == doctest::Approx(4.0 / 3.0));
  CHECK(global.pair_ratio == doctest::Approx(8.0 / 7.0));
  CHECK(classify(doubled).verdict == Verdict::TypeII);
}

TEST_CASE("classify survives the spreading budget with a note") {
  const HypergraphPair big = make_complete(1.0, {5, 5});
  const ClassificationResult r = classify(big, /*spreading_budget=*/6);
  CHECK(r.verdict == Verdict::TypeI);
  CHECK(r.notes.find("budget") != std::string::npos);
}

TEST_CASE("degenerate axis detection flags averaging directions") {
  const DegenerateExtension ext = make_degenerate_extension(make_lp(2.0), 1);
  const DegenerateAxesResult r = detect_degenerate_axes(ext.pair);
  CHECK(r.axes == std::vector<int>{1});
  REQUIRE(r.base.has_value());
  CHECK(r.base->k == 1);
  CHECK(r.base->size() == doctest::Approx(2.0));

  CHECK(detect_degenerate_axes(make_gowers(2)).axes.empty());

  // Every U_1 vertex carries total one, so all axes are flagged and no
  // proper base projection exists.
  const DegenerateAxesResult u1 = detect_degenerate_axes(make_gowers(1));
  CHECK(u1.axes == std::vector<int>{0});
  CHECK_FALSE(u1.base.has_value());
}
