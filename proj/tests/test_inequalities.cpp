#include <doctest.h>

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "hypernorm/catalog.hpp"
#include "hypernorm/engine.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/inequalities.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/space.hpp"

using namespace hypernorm;

namespace {

TrialConfig quick(int trials, std::uint64_t seed = 0) {
  TrialConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("first Holder bound holds on norming pairs") {
  const TrialConfig cfg = quick(120, 11);
  for (const Omega& psi : {Omega{0, 1}, Omega{1, 0}}) {
    const InequalityReport r = verify_first_holder(make_gowers(2), psi, cfg);
    CHECK(r.pass);
    CHECK(r.trials_run == cfg.trials);
    CHECK(r.worst_margin >= -cfg.tolerance);
  }
  // Beta side: the even-parity cells carry the U_2 conjugated weights.
  CHECK(verify_first_holder(make_gowers(2), {0, 0}, cfg, /*beta_side=*/true)
            .pass);
  CHECK(verify_first_holder(make_schatten(4), {0, 0}, cfg).pass);
  CHECK(verify_first_holder(make_lp(3.0), {0}, cfg).pass);
}

TEST_CASE("first Holder rejects cells with weight below one") {
  const TrialConfig cfg = quick(5);
  // (0,0) has alpha weight 0 in U_2.
  CHECK_THROWS_AS(verify_first_holder(make_gowers(2), {0, 0}, cfg),
                  ValidationError);
  // Weight 1/2 on each side of the complete half-pair.
  CHECK_THROWS_AS(verify_first_holder(make_complete(0.5, {2}), {0}, cfg),
                  ValidationError);
}

TEST_CASE("first Holder search mode drives a failing pair negative") {
  TrialConfig cfg = quick(60, 0);
  const HypergraphPair doubled = scale(make_gowers(2), 2.0);
  const InequalityReport r =
      verify_first_holder(doubled, {0, 1}, cfg, false, /*search=*/true);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_margin < -1e-3);
  CHECK(r.witness.functions.size() == 2);
}

TEST_CASE("general Holder on the trivial decomposition is an equality") {
  const TrialConfig cfg = quick(60, 3);
  for (const HypergraphPair& h :
       {make_gowers(2), make_schatten(4), make_lp(2.5)}) {
    for (const HolderMode mode :
         {HolderMode::Nonnegative, HolderMode::Integer, HolderMode::General}) {
      if (mode == HolderMode::Integer && !h.is_integer_valued(1e-9)) continue;
      const InequalityReport r = verify_general_holder(h, {h}, cfg, mode);
      CHECK(r.pass);
      // |integral(f^H)| == ||f||_H^{|H|} by definition, so the margin is
      // numerically zero in both directions.
      CHECK(r.worst_margin >= -1e-9);
      CHECK(r.worst_margin <= 1e-6);
    }
  }
}

TEST_CASE("general Holder across a two-part split of U_2") {
  const HypergraphPair u2 = make_gowers(2);
  HypergraphPair alpha_part = make_zero_pair(2, {2, 2});
  alpha_part.alpha = u2.alpha;
  HypergraphPair beta_part = make_zero_pair(2, {2, 2});
  beta_part.beta = u2.beta;

  const TrialConfig cfg = quick(150, 5);
  CHECK(verify_general_holder(u2, {alpha_part, beta_part}, cfg,
                              HolderMode::Nonnegative)
            .pass);
  CHECK(verify_general_holder(u2, {alpha_part, beta_part}, cfg,
                              HolderMode::Integer)
            .pass);

  // Parts that do not sum back to H are rejected.
  CHECK_THROWS_AS(
      verify_general_holder(u2, {alpha_part, alpha_part}, cfg,
                            HolderMode::Nonnegative),
      ValidationError);
  CHECK_THROWS_AS(verify_general_holder(u2, {}, cfg, HolderMode::Nonnegative),
                  ValidationError);
  // Integer mode insists on integer-valued parts.
  CHECK_THROWS_AS(
      verify_general_holder(make_lp(2.5),
                            {scale(make_lp(2.5), 0.4),
                             scale(make_lp(2.5), 0.6)},
                            cfg, HolderMode::Integer),
      ValidationError);
}

TEST_CASE("norm monotonicity holds under each mode guard") {
  const TrialConfig cfg = quick(120, 17);

  const HypergraphPair u2 = make_gowers(2);
  const HypergraphPair half_u2 = scale(u2, 0.5);
  CHECK(verify_norm_monotonicity(u2, half_u2, cfg,
                                 MonotonicityMode::NonnegativeF)
            .pass);

  const HypergraphPair k22 = make_complete(1.0, {2, 2});
  CHECK(verify_norm_monotonicity(k22, make_complete(0.5, {2, 2}), cfg,
                                 MonotonicityMode::TypeIPair)
            .pass);

  const HypergraphPair one_cell = delta(2, {2, 2}, {0, 1});
  CHECK(verify_norm_monotonicity(u2, one_cell, cfg,
                                 MonotonicityMode::IntegerPairs)
            .pass);

  // Guard violations.
  CHECK_THROWS_AS(verify_norm_monotonicity(half_u2, u2, cfg,
                                           MonotonicityMode::NonnegativeF),
                  ValidationError);  // K > H entrywise
  CHECK_THROWS_AS(verify_norm_monotonicity(u2, half_u2, cfg,
                                           MonotonicityMode::TypeIPair),
                  ValidationError);  // U_2 is not uniform equal-split
  CHECK_THROWS_AS(verify_norm_monotonicity(u2, half_u2, cfg,
                                           MonotonicityMode::IntegerPairs),
                  ValidationError);  // 0.5 weights are not integers
  CHECK_THROWS_AS(verify_norm_monotonicity(u2, make_lp(1.0), cfg,
                                           MonotonicityMode::NonnegativeF),
                  DimensionError);
}

TEST_CASE("Gowers Cauchy-Schwarz over an off-support cell") {
  const TrialConfig cfg = quick(150, 23);
  const HypergraphPair u2 = make_gowers(2);
  const HypergraphPair h = sub(u2, delta(2, {2, 2}, {0, 1}));
  const InequalityReport r = verify_gowers_cs(h, {0, 1}, cfg);
  CHECK(r.pass);
  CHECK(r.worst_margin >= -cfg.tolerance);

  // psi inside the support is rejected; so is a box with a side != 2.
  CHECK_THROWS_AS(verify_gowers_cs(u2, {0, 1}, cfg), ValidationError);
  CHECK_THROWS_AS(verify_gowers_cs(make_complete(1.0, {3, 2}), {0, 0}, cfg),
                  ValidationError);
}

TEST_CASE("Gowers approximation bound on zero-one alpha pairs") {
  const TrialConfig cfg = quick(150, 29);
  HypergraphPair h = make_zero_pair(2, {2, 2});
  h.alpha[{0, 1}] = 1.0;
  h.alpha[{1, 0}] = 1.0;
  const InequalityReport r = verify_gowers_approx(h, cfg);
  CHECK(r.pass);

  CHECK_THROWS_AS(verify_gowers_approx(make_gowers(2), cfg),
                  ValidationError);  // beta nonzero
  HypergraphPair fractional = make_zero_pair(2, {2, 2});
  fractional.alpha[{0, 1}] = 0.5;
  CHECK_THROWS_AS(verify_gowers_approx(fractional, cfg), ValidationError);
}

TEST_CASE("self-union factor equality is numerically exact") {
  const TrialConfig cfg = quick(80, 31);
  for (const HypergraphPair& h :
       {make_gowers(2), make_schatten(4), make_lp(3.0)}) {
    for (const bool conj_second : {false, true}) {
      const InequalityReport r = verify_factor_equality(h, cfg, conj_second);
      CHECK(r.pass);
      CHECK(r.worst_margin <= 0.0);
      CHECK(r.worst_margin >= -1e-10);
    }
  }
}

TEST_CASE("lattice concavity and convexity on uniform pairs") {
  const TrialConfig cfg = quick(100, 37);
  for (const HypergraphPair& h :
       {make_lp(2.0), make_lp(3.0), make_complete(1.0, {2, 2})}) {
    CHECK(verify_lattice_concavity(h, cfg).pass);
    CHECK(verify_lattice_convexity(h, cfg).pass);
  }
  // L_2 concavity is an exact identity: sum of p-th powers both sides.
  const InequalityReport exact = verify_lattice_concavity(make_lp(2.0), cfg);
  CHECK(std::abs(exact.worst_margin) <= 1e-9);

  CHECK_THROWS_AS(verify_lattice_concavity(make_gowers(2), cfg),
                  ValidationError);  // not uniform equal-split
  CHECK_THROWS_AS(verify_lattice_convexity(make_complete(0.25, {2}), cfg),
                  ValidationError);  // s < 1
  CHECK_THROWS_AS(verify_lattice_concavity(make_lp(2.0), cfg, 1),
                  ValidationError);
  CHECK_THROWS_AS(verify_lattice_concavity(make_lp(2.0), cfg, 9),
                  ValidationError);
}

TEST_CASE("reports replay bit for bit under a fixed seed") {
  const TrialConfig cfg = quick(40, 97);
  const InequalityReport a = verify_factor_equality(make_gowers(2), cfg);
  const InequalityReport b = verify_factor_equality(make_gowers(2), cfg);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.witness.trial_index == b.witness.trial_index);
  CHECK(a.seed == b.seed);

  const InequalityReport c = verify_first_holder(make_gowers(2), {0, 1}, cfg);
  const InequalityReport d = verify_first_holder(make_gowers(2), {0, 1}, cfg);
  CHECK(c.worst_margin == d.worst_margin);

  TrialConfig other = cfg;
  other.seed = 98;
  const InequalityReport e = verify_first_holder(make_gowers(2), {0, 1}, other);
  CHECK(e.worst_margin != c.worst_margin);
}

TEST_CASE("pseudorandom sign functions balance exactly") {
  for (const auto& [m, k] : std::vector<std::pair<int, int>>{{4, 1}, {8, 2}}) {
    const SignFunction s = gen_pseudorandom_sign(m, k, 42);
    CHECK(s.g.k == k);
    CHECK(s.g.space.n == m);
    for (const Complex& z : s.g.values) {
      CHECK(std::abs(z.real()) == doctest::Approx(1.0));
      CHECK(z.imag() == 0.0);
    }
    // Dyadic uniform weights make the balanced sum exactly zero.
    CHECK(std::abs(s.g.mean_integral()) == 0.0);
    const double direct = norm(make_gowers(k), s.g).value;
    CHECK(s.gowers_norm == doctest::Approx(direct).epsilon(1e-12));
  }
  // Different seeds explore different sign patterns.
  CHECK(gen_pseudorandom_sign(8, 2, 1).g.values !=
        gen_pseudorandom_sign(8, 2, 2).g.values);
  CHECK_THROWS_AS(gen_pseudorandom_sign(7, 2, 0), ValidationError);
  CHECK_THROWS_AS(gen_pseudorandom_sign(0, 2, 0), ValidationError);
}

TEST_CASE("violation search certifies witnesses on failing pairs") {
  TrialConfig cfg = quick(200, 7);

  const HypergraphPair doubled = scale(make_gowers(2), 2.0);
  const std::optional<ViolationWitness> w =
      search_triangle_violation(doubled, cfg);
  REQUIRE(w.has_value());
  CHECK(w->gap > 1e-6);
  CHECK(w->norm_f + w->norm_g == doctest::Approx(10.0).epsilon(1e-9));

  // Re-certify with an independent brute-force evaluation.
  EvalOptions brute;
  brute.path = EvalPath::Brute;
  const double nf = norm(doubled, w->f, brute).value;
  const double ng = norm(doubled, w->g, brute).value;
  const double ns = norm(doubled, add(w->f, w->g), brute).value;
  CHECK(nf == doctest::Approx(w->norm_f).epsilon(1e-9));
  CHECK(ng == doctest::Approx(w->norm_g).epsilon(1e-9));
  CHECK(ns == doctest::Approx(w->norm_sum).epsilon(1e-9));
  CHECK(ns - nf - ng == doctest::Approx(w->gap).epsilon(1e-6));

  const std::optional<ViolationWitness> sqrt2 =
      search_triangle_violation(make_sqrt2_pair(), cfg);
  REQUIRE(sqrt2.has_value());
  CHECK(sqrt2->gap > 1e-6);
}

TEST_CASE("violation search is deterministic and thread-agnostic") {
  TrialConfig cfg = quick(60, 7);
  const HypergraphPair doubled = scale(make_gowers(2), 2.0);
  const std::optional<ViolationWitness> a =
      search_triangle_violation(doubled, cfg);
  const std::optional<ViolationWitness> b =
      search_triangle_violation(doubled, cfg);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->restart_index == b->restart_index);
  CHECK(a->gap == b->gap);

  TrialConfig threaded = cfg;
  threaded.threads = 2;
  const std::optional<ViolationWitness> c =
      search_triangle_violation(doubled, threaded);
  REQUIRE(c.has_value());
  CHECK(c->restart_index == a->restart_index);
  CHECK(c->gap == doctest::Approx(a->gap).epsilon(1e-9));
}

TEST_CASE("violation search stays silent on norming pairs") {
  TrialConfig cfg = quick(80, 7);
  CHECK_FALSE(search_triangle_violation(make_gowers(2), cfg).has_value());
  CHECK_FALSE(search_triangle_violation(make_schatten(4), cfg).has_value());
  CHECK_FALSE(search_triangle_violation(make_lp(2.0), cfg).has_value());
}
