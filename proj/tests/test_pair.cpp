#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "hypernorm/catalog.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/isomorphism.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/rng.hpp"

using namespace hypernorm;

namespace {

// Random small nonnegative pair for property checks: up to 3 axes, up to 3
// vertices per axis, a handful of support cells with weights in (0, 2].
HypergraphPair random_pair(CounterRng& rng, int forced_k = 0) {
  const int k = forced_k > 0 ? forced_k : 1 + static_cast<int>(rng.below(3));
  std::vector<int> dims;
  for (int i = 0; i < k; ++i) dims.push_back(1 + static_cast<int>(rng.below(3)));
  HypergraphPair h = make_zero_pair(k, dims);
  const int cells = 1 + static_cast<int>(rng.below(4));
  for (int c = 0; c < cells; ++c) {
    Omega w;
    for (int i = 0; i < k; ++i) {
      w.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(dims[static_cast<std::size_t>(i)]))));
    }
    if (rng.bernoulli(0.5)) {
      h.alpha[w] += rng.uniform(0.25, 2.0);
    } else {
      h.beta[w] += rng.uniform(0.25, 2.0);
    }
  }
  return h;
}

HypergraphPair relabel(const HypergraphPair& h,
                       const std::vector<std::vector<int>>& maps) {
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

TEST_CASE("size matches the weight total") {
  CHECK(make_gowers(2).size() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(make_zero_pair(1, {2}).size() == 0.0);
  CHECK(make_schatten(4).size() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(make_lp(3.5).size() == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("delta pairs and their conjugates") {
  const HypergraphPair d = delta(1, {1}, {0});
  CHECK(d.size() == 1.0);
  CHECK(d.alpha.size() == 1);
  CHECK(d.beta.empty());

  const HypergraphPair dc = conjugate(d);
  CHECK(dc.alpha.empty());
  CHECK(dc.beta.at({0}) == 1.0);

  // (1_psi + conj(1_psi)) / 2 has alpha = beta = 1/2 at psi.
  const HypergraphPair sym = scale(add(d, dc), 0.5);
  CHECK(sym.alpha.at({0}) == doctest::Approx(0.5));
  CHECK(sym.beta.at({0}) == doctest::Approx(0.5));

  CHECK_THROWS_AS(delta(1, {1}, {1}), ValidationError);
  CHECK_THROWS_AS(delta(2, {2, 2}, {0}), ValidationError);
}

TEST_CASE("arithmetic basics") {
  const HypergraphPair u2 = make_gowers(2);
  CHECK(conjugate(conjugate(u2)) == u2);

  // Subtracting a delta at a weight-1 support cell leaves a nonnegative pair.
  const HypergraphPair reduced = sub(u2, delta(2, {2, 2}, {0, 1}));
  CHECK(reduced.is_nonnegative());
  CHECK(reduced.size() == doctest::Approx(3.0));
  CHECK(reduced.alpha.count({0, 1}) == 0);  // zero entries are pruned

  // Cancelation prunes to the zero pair.
  CHECK(sub(u2, u2) == make_zero_pair(2, {2, 2}));

  const HypergraphPair doubled = scale(u2, 2.0);
  CHECK(doubled.size() == doctest::Approx(8.0));
  CHECK(doubled.alpha.at({0, 1}) == doctest::Approx(2.0));

  CHECK_THROWS_AS(add(u2, make_lp(2)), DimensionError);
  CHECK_THROWS_AS(add(make_zero_pair(1, {2}), make_zero_pair(1, {3})),
                  DimensionError);
}

TEST_CASE("size is subadditive under add, additive for nonnegative pairs") {
  CounterRng rng(2024, 0);
  const auto random_on_box = [&](int k, const std::vector<int>& dims) {
    HypergraphPair h = make_zero_pair(k, dims);
    const int cells = 1 + static_cast<int>(rng.below(4));
    for (int c = 0; c < cells; ++c) {
      Omega w;
      for (int i = 0; i < k; ++i) {
        w.push_back(static_cast<int>(
            rng.below(static_cast<std::uint64_t>(dims[static_cast<std::size_t>(i)]))));
      }
      (rng.bernoulli(0.5) ? h.alpha : h.beta)[w] += rng.uniform(0.25, 2.0);
    }
    return h;
  };
  for (int t = 0; t < 50; ++t) {
    const HypergraphPair a = random_pair(rng);
    const HypergraphPair c = random_on_box(a.k, a.dims);
    const double lhs = add(a, c).size();
    CHECK(lhs <= a.size() + c.size() + 1e-12);
    CHECK(lhs == doctest::Approx(a.size() + c.size()).epsilon(1e-12));

    // The difference a - c can go negative; size uses absolute values, so
    // subadditivity is the only guarantee there.
    CHECK(sub(a, c).size() <= a.size() + c.size() + 1e-12);
  }
}

TEST_CASE("disjoint union places blocks and adds dims") {
  const HypergraphPair lp = make_lp(1.5);
  const HypergraphPair uu = disjoint_union(lp, lp);
  CHECK(uu.k == 1);
  CHECK(uu.dims == std::vector<int>{2});
  CHECK(uu.size() == doctest::Approx(3.0));
  CHECK(uu.alpha.at({0}) == doctest::Approx(0.75));
  CHECK(uu.alpha.at({1}) == doctest::Approx(0.75));

  const HypergraphPair u2 = make_gowers(2);
  const HypergraphPair two = disjoint_union(u2, u2);
  CHECK(two.dims == std::vector<int>{4, 4});
  CHECK(two.size() == doctest::Approx(8.0));
  // No cross-block support.
  for (const Omega& w : two.support()) {
    const bool low = w[0] < 2;
    CHECK((w[1] < 2) == low);
  }

  const Factorization parts = factorize(two);
  REQUIRE(parts.components.size() == 2);
  CHECK(isomorphic(parts.components[0], u2));
  CHECK(isomorphic(parts.components[1], u2));

  CHECK_THROWS_AS(disjoint_union(u2, lp), DimensionError);
}

TEST_CASE("tensor product shape and size") {
  // Tensoring keeps the axis count, so U_1 (x) U_1 stays a one-axis pair
  // over four vertices: alpha on {(0),(3)}, beta on {(1),(2)} — the same
  // shape as two disjoint copies of U_1 up to relabeling.
  const HypergraphPair u1 = make_gowers(1);
  const HypergraphPair tt = tensor(u1, u1);
  CHECK(tt.k == 1);
  CHECK(tt.dims == std::vector<int>{4});
  CHECK(tt.alpha.at({0}) == doctest::Approx(1.0));
  CHECK(tt.alpha.at({3}) == doctest::Approx(1.0));
  CHECK(tt.beta.at({1}) == doctest::Approx(1.0));
  CHECK(tt.beta.at({2}) == doctest::Approx(1.0));
  CHECK(isomorphic(tt, disjoint_union(u1, u1)));

  const HypergraphPair l2 = make_lp(2);
  const HypergraphPair t = tensor(l2, l2);
  CHECK(t.k == 1);
  CHECK(t.dims == std::vector<int>{1});
  // alpha x alpha + beta x beta = 1 + 1 = 2 on the single cell; same for beta.
  CHECK(t.alpha.at({0}) == doctest::Approx(2.0));
  CHECK(t.beta.at({0}) == doctest::Approx(2.0));

  CounterRng rng(7, 0);
  for (int t2 = 0; t2 < 20; ++t2) {
    const HypergraphPair a = random_pair(rng);
    HypergraphPair b = random_pair(rng);
    while (b.k != a.k) b = random_pair(rng);
    CHECK(tensor(a, b).size() ==
          doctest::Approx(a.size() * b.size()).epsilon(1e-9));
  }
}

TEST_CASE("projection sums fibers and preserves size") {
  const HypergraphPair u2 = make_gowers(2);
  const HypergraphPair p0 = project(u2, {0});
  CHECK(p0.k == 1);
  CHECK(p0.dims == std::vector<int>{2});
  CHECK(p0.alpha.at({0}) == doctest::Approx(1.0));
  CHECK(p0.alpha.at({1}) == doctest::Approx(1.0));
  CHECK(p0.beta.at({0}) == doctest::Approx(1.0));
  CHECK(p0.beta.at({1}) == doctest::Approx(1.0));

  const HypergraphPair s4 = make_schatten(4);
  const HypergraphPair q0 = project(s4, {0});
  CHECK(q0.alpha.at({0}) == doctest::Approx(1.0));
  CHECK(q0.alpha.at({1}) == doctest::Approx(1.0));
  CHECK(q0.beta.at({0}) == doctest::Approx(1.0));
  CHECK(q0.beta.at({1}) == doctest::Approx(1.0));

  CHECK(project(u2, {0, 1}) == u2);
  CHECK_THROWS_AS(project(u2, {}), ValidationError);
  CHECK_THROWS_AS(project(u2, {2}), ValidationError);

  // Nested projections compose: (H_S)_{S'} = H_{image of S' in S}.
  CounterRng rng(11, 0);
  for (int t = 0; t < 30; ++t) {
    HypergraphPair h = random_pair(rng);
    if (h.k < 2) continue;
    const std::vector<int> outer = h.k == 3 ? std::vector<int>{0, 2}
                                            : std::vector<int>{0, 1};
    const HypergraphPair once = project(h, outer);
    const HypergraphPair twice = project(once, {1});
    CHECK(twice == project(h, {outer[1]}));
    CHECK(once.size() == doctest::Approx(h.size()).epsilon(1e-12));
  }
}

TEST_CASE("isomorphism finds witnesses and respects weights") {
  const HypergraphPair u2 = make_gowers(2);
  CHECK(isomorphic(u2, conjugate(u2)));
  CHECK(isomorphic(make_schatten(4), conjugate(make_schatten(4))));
  CHECK_FALSE(isomorphic(make_lp(2), make_lp(3)));

  const auto witness = find_isomorphism(u2, conjugate(u2));
  REQUIRE(witness.has_value());
  const HypergraphPair mapped = relabel(u2, witness->axis_maps);
  CHECK(mapped == conjugate(u2));
}

TEST_CASE("isomorphism is an equivalence relation") {
  CounterRng rng(99, 0);
  for (int t = 0; t < 25; ++t) {
    const HypergraphPair h = random_pair(rng);

    // Reflexive.
    CHECK(isomorphic(h, h));

    // Symmetric: relabeled copies map back.
    std::vector<std::vector<int>> maps;
    for (int i = 0; i < h.k; ++i) {
      std::vector<int> perm(static_cast<std::size_t>(h.dims[static_cast<std::size_t>(i)]));
      for (std::size_t v = 0; v < perm.size(); ++v) perm[v] = static_cast<int>(v);
      for (std::size_t v = perm.size(); v > 1; --v) {
        std::swap(perm[v - 1], perm[rng.below(v)]);
      }
      maps.push_back(perm);
    }
    const HypergraphPair g = relabel(h, maps);
    CHECK(isomorphic(h, g));
    CHECK(isomorphic(g, h));

    // Transitive through a second relabeling.
    const HypergraphPair f = relabel(g, maps);
    CHECK(isomorphic(h, f));
  }
}

TEST_CASE("union and tensor are associative up to isomorphism") {
  CounterRng rng(123, 0);
  for (int t = 0; t < 15; ++t) {
    const int k = 1 + static_cast<int>(rng.below(2));
    const HypergraphPair a = random_pair(rng, k);
    const HypergraphPair b = random_pair(rng, k);
    const HypergraphPair c = random_pair(rng, k);
    CHECK(isomorphic(disjoint_union(disjoint_union(a, b), c),
                     disjoint_union(a, disjoint_union(b, c))));
    CHECK(isomorphic(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
  }
}

TEST_CASE("factorize splits components and reports isolated vertices") {
  CHECK(factorize(make_gowers(2)).components.size() == 1);
  CHECK(factorize(disjoint_union(make_lp(2), make_lp(3))).components.size() ==
        2);

  const Factorization empty = factorize(make_zero_pair(1, {2}));
  CHECK(empty.components.empty());
  REQUIRE(empty.isolated_vertices.size() == 1);
  CHECK(empty.isolated_vertices[0] == std::vector<int>{0, 1});

  // Round-trip: reassembling components is isomorphic to the original once
  // isolated vertices are discarded.
  CounterRng rng(5, 0);
  for (int t = 0; t < 25; ++t) {
    const HypergraphPair h = random_pair(rng);
    const Factorization parts = factorize(h);
    if (parts.components.empty()) continue;
    HypergraphPair joined = parts.components[0];
    for (std::size_t c = 1; c < parts.components.size(); ++c) {
      joined = disjoint_union(joined, parts.components[c]);
    }
    bool has_isolated = false;
    for (const auto& axis : parts.isolated_vertices) {
      has_isolated = has_isolated || !axis.empty();
    }
    if (!has_isolated) {
      CHECK(isomorphic(joined, h));
    } else {
      CHECK(joined.size() == doctest::Approx(h.size()).epsilon(1e-12));
    }
  }
}

TEST_CASE("minimality detects isolated vertices and doubled pairs") {
  CHECK(is_minimal(make_gowers(2)).minimal);
  CHECK_FALSE(is_minimal(disjoint_union(make_lp(2), make_lp(2))).minimal);

  HypergraphPair iso = make_lp(2);
  iso.dims = {2};  // second vertex incident to nothing
  const MinimalityResult r = is_minimal(iso);
  CHECK_FALSE(r.minimal);
  CHECK_FALSE(r.reason.empty());

  // An odd multiplicity saves minimality: three copies of L_2.
  const HypergraphPair three = disjoint_union(
      disjoint_union(make_lp(2), make_lp(2)), make_lp(2));
  CHECK(is_minimal(three).minimal);
}

TEST_CASE("validate rejects malformed shapes") {
  HypergraphPair bad = make_gowers(2);
  bad.alpha[{5, 0}] = 1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  HypergraphPair nan_pair = make_lp(2);
  nan_pair.alpha[{0}] = std::nan("");
  CHECK_THROWS_AS(nan_pair.validate(), ValidationError);

  HypergraphPair wrong_k;
  wrong_k.k = 0;
  CHECK_THROWS_AS(wrong_k.validate(), ValidationError);
}

TEST_CASE("enumerate_cells walks the box lexicographically") {
  const std::vector<Omega> cells = enumerate_cells({2, 3});
  REQUIRE(cells.size() == 6);
  CHECK(cells.front() == Omega{0, 0});
  CHECK(cells[1] == Omega{0, 1});
  CHECK(cells.back() == Omega{1, 2});
  CHECK(enumerate_cells({}).empty());
}
