#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#if defined(HYPERNORM_HAVE_EIGEN)
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#endif

#include "hypernorm/catalog.hpp"
#include "hypernorm/engine.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/isomorphism.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/rng.hpp"
#include "hypernorm/space.hpp"

using namespace hypernorm;

namespace {

GridFunction random_function(const DiscreteMeasureSpace& space, int k,
                             CounterRng& rng) {
  GridFunction f = GridFunction::zero(space, k);
  for (Complex& v : f.values) v = rng.complex_gaussian();
  return f;
}

}  // namespace

TEST_CASE("lp pairs reproduce the weighted p-sum on 100 functions per p") {
  CounterRng rng(1001, 0);
  for (const double p : {1.0, 2.0, 3.0, 4.5}) {
    const HypergraphPair h = make_lp(p);
    for (int t = 0; t < 100; ++t) {
      const int n = 2 + static_cast<int>(rng.below(7));
      std::vector<double> weights;
      for (int i = 0; i < n; ++i) weights.push_back(rng.uniform(0.1, 3.0));
      const DiscreteMeasureSpace space{n, weights};
      const GridFunction f = random_function(space, 1, rng);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += weights[static_cast<std::size_t>(i)] *
               std::pow(std::abs(f.values[static_cast<std::size_t>(i)]), p);
      }
      const double expected = std::pow(sum, 1.0 / p);
      const double got = norm(h, f).value;
      CHECK(std::abs(got - expected) <= 1e-12 * std::max(expected, 1e-300));
    }
  }
}

TEST_CASE("lp validation range") {
  CHECK_THROWS_AS(make_lp(0.8), ValidationError);
  CHECK_THROWS_AS(make_lp(-2.0, true), ValidationError);
  const HypergraphPair q = make_lp(0.8, /*allow_subunit=*/true);
  CHECK(q.size() == doctest::Approx(0.8));
}

TEST_CASE("gowers pairs put alpha on odd-parity cells") {
  const HypergraphPair u3 = make_gowers(3);
  CHECK(u3.k == 3);
  CHECK(u3.dims == std::vector<int>{2, 2, 2});
  CHECK(u3.size() == doctest::Approx(8.0));
  for (const Omega& w : enumerate_cells(u3.dims)) {
    int parity = 0;
    for (const int v : w) parity ^= v;
    if (parity == 1) {
      CHECK(u3.alpha.at(w) == doctest::Approx(1.0));
      CHECK(u3.beta.count(w) == 0);
    } else {
      CHECK(u3.beta.at(w) == doctest::Approx(1.0));
      CHECK(u3.alpha.count(w) == 0);
    }
  }
  CHECK_THROWS_AS(make_gowers(0), ValidationError);
}

TEST_CASE("U_2 is exactly the conjugate of S_4") {
  CHECK(make_gowers(2) == conjugate(make_schatten(4)));
}

TEST_CASE("U_2 norm to the fourth equals the trace of (FF*)^2") {
  CounterRng rng(1002, 0);
  const HypergraphPair u2 = make_gowers(2);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const DiscreteMeasureSpace counting = DiscreteMeasureSpace::counting(n);
    const GridFunction f = random_function(counting, 2, rng);
    // Tr((FF*)^2) = sum over x0,x1 of |sum_y F(x0,y) conj(F(x1,y))|^2.
    double trace = 0.0;
    for (int x0 = 0; x0 < n; ++x0) {
      for (int x1 = 0; x1 < n; ++x1) {
        Complex inner(0.0, 0.0);
        for (int y = 0; y < n; ++y) {
          inner += f.values[static_cast<std::size_t>(x0 * n + y)] *
                   std::conj(f.values[static_cast<std::size_t>(x1 * n + y)]);
        }
        trace += std::norm(inner);
      }
    }
    const double got = norm(u2, f).value;
    CHECK(std::abs(std::pow(got, 4.0) - trace) <=
          1e-10 * std::max(trace, 1e-300));
  }
}

TEST_CASE("schatten pairs match the repeated-product trace oracle") {
  CounterRng rng(1003, 0);
  for (const int two_m : {4, 6}) {
    const HypergraphPair h = make_schatten(two_m);
    CHECK(h.k == 2);
    CHECK(h.dims == std::vector<int>(2, two_m / 2));
    for (int t = 0; t < 25; ++t) {
      const int n = 2 + static_cast<int>(rng.below(3));
      const DiscreteMeasureSpace counting = DiscreteMeasureSpace::counting(n);
      const GridFunction f = random_function(counting, 2, rng);
      const double expected = schatten_oracle(f, two_m);
      const double got = norm(h, f).value;
      CHECK(std::abs(got - expected) <= 1e-10 * std::max(expected, 1e-300));
    }
  }
  CHECK_THROWS_AS(make_schatten(3), ValidationError);
  CHECK_THROWS_AS(make_schatten(0), ValidationError);
}

#if defined(HYPERNORM_HAVE_EIGEN)
TEST_CASE("schatten oracle agrees with an eigenvalue computation") {
  CounterRng rng(1004, 0);
  for (const int two_m : {4, 6, 8}) {
    for (int t = 0; t < 10; ++t) {
      const int n = 2 + static_cast<int>(rng.below(4));
      const DiscreteMeasureSpace counting = DiscreteMeasureSpace::counting(n);
      const GridFunction f = random_function(counting, 2, rng);
      Eigen::MatrixXcd m(n, n);
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          m(x, y) = f.values[static_cast<std::size_t>(x * n + y)];
        }
      }
      const Eigen::VectorXd evals =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m * m.adjoint())
              .eigenvalues();
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += std::pow(std::max(evals(i), 0.0), two_m / 2.0);
      }
      const double expected = std::pow(sum, 1.0 / two_m);
      CHECK(schatten_oracle(f, two_m) ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }
}
#endif

TEST_CASE("rank-one matrices have schatten norm equal to the vector norms") {
  CounterRng rng(1005, 0);
  const int n = 3;
  const DiscreteMeasureSpace counting = DiscreteMeasureSpace::counting(n);
  for (int t = 0; t < 10; ++t) {
    std::vector<Complex> u, v;
    for (int i = 0; i < n; ++i) {
      u.push_back(rng.complex_gaussian());
      v.push_back(rng.complex_gaussian());
    }
    GridFunction f = GridFunction::zero(counting, 2);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        f.values[static_cast<std::size_t>(x * n + y)] =
            u[static_cast<std::size_t>(x)] * v[static_cast<std::size_t>(y)];
      }
    }
    double nu = 0.0, nv = 0.0;
    for (int i = 0; i < n; ++i) {
      nu += std::norm(u[static_cast<std::size_t>(i)]);
      nv += std::norm(v[static_cast<std::size_t>(i)]);
    }
    const double expected = std::sqrt(nu) * std::sqrt(nv);
    CHECK(norm(make_schatten(4), f).value ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(norm(make_schatten(6), f).value ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("the 2x2 identity has schatten-4 norm 2^(1/4)") {
  const DiscreteMeasureSpace counting = DiscreteMeasureSpace::counting(2);
  GridFunction eye = GridFunction::zero(counting, 2);
  eye.values[0] = Complex(1.0, 0.0);
  eye.values[3] = Complex(1.0, 0.0);
  CHECK(norm(make_schatten(4), eye).value ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  CHECK(schatten_oracle(eye, 4) ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("complete pairs cover the box with constant weights") {
  const HypergraphPair h = make_complete(1.5, {2, 3});
  CHECK(h.size() == doctest::Approx(2.0 * 1.5 * 6.0));
  for (const Omega& w : enumerate_cells({2, 3})) {
    CHECK(h.alpha.at(w) == doctest::Approx(1.5));
    CHECK(h.beta.at(w) == doctest::Approx(1.5));
  }
  CHECK_THROWS_AS(make_complete(0.4, {2, 2}), ValidationError);
  CHECK_THROWS_AS(make_complete(1.0, {}), ValidationError);
  CHECK_THROWS_AS(make_complete(1.0, {0, 2}), ValidationError);
}

TEST_CASE("sqrt2 pair weights") {
  const HypergraphPair h = make_sqrt2_pair();
  CHECK(h.k == 2);
  CHECK(h.dims == std::vector<int>{2, 2});
  const double diag = std::sqrt(2.0) / 2.0;
  CHECK(h.alpha.at({0, 0}) == doctest::Approx(diag));
  CHECK(h.alpha.at({1, 1}) == doctest::Approx(diag));
  CHECK(h.alpha.at({0, 1}) == doctest::Approx(0.5));
  CHECK(h.alpha.at({1, 0}) == doctest::Approx(0.5));
  CHECK(h.alpha == h.beta);
}

TEST_CASE("catalog pairs are minimal") {
  CHECK(is_minimal(make_lp(1.0)).minimal);
  CHECK(is_minimal(make_lp(3.5)).minimal);
  CHECK(is_minimal(make_gowers(1)).minimal);
  CHECK(is_minimal(make_gowers(2)).minimal);
  CHECK(is_minimal(make_gowers(3)).minimal);
  CHECK(is_minimal(make_schatten(4)).minimal);
  CHECK(is_minimal(make_schatten(6)).minimal);
  CHECK(is_minimal(make_complete(1.0, {2, 2})).minimal);
  CHECK(is_minimal(make_sqrt2_pair()).minimal);
  // Degenerate extensions are reported but not asserted either way; once the
  // fresh vertices land on every new axis, the extension stays connected
  // through the base cells.
  const DegenerateExtension ext =
      make_degenerate_extension(make_complete(1.0, {2}), 1);
  (void)is_minimal(ext.pair);
}

TEST_CASE("zero-one functions obey the L1 lower bound on probability spaces") {
  // For all-positive exponents and zero-one f, the integral dominates
  // ||f||_1 raised to the total weight |H|.
  CounterRng rng(1006, 0);
  for (const double p : {1.0, 1.5}) {
    const HypergraphPair h = make_complete(p, {2, 2});
    for (int t = 0; t < 60; ++t) {
      const int n = 2 + static_cast<int>(rng.below(3));
      const DiscreteMeasureSpace space =
          DiscreteMeasureSpace::uniform_probability(n);
      GridFunction f = GridFunction::zero(space, 2);
      for (Complex& v : f.values) {
        v = Complex(rng.bernoulli(0.6) ? 1.0 : 0.0, 0.0);
      }
      const double lhs = integrate(h, f).real();
      const double rhs = std::pow(f.l1_norm(), h.size());
      CHECK(lhs >= rhs - 1e-12);
    }
  }
  // Same bound for the box-norm pair U_2.
  const HypergraphPair u2 = make_gowers(2);
  for (int t = 0; t < 40; ++t) {
    const DiscreteMeasureSpace space =
        DiscreteMeasureSpace::uniform_probability(3);
    GridFunction f = GridFunction::zero(space, 2);
    for (Complex& v : f.values) {
      v = Complex(rng.bernoulli(0.5) ? 1.0 : 0.0, 0.0);
    }
    const double lhs = integrate(u2, f).real();
    const double rhs = std::pow(f.l1_norm(), u2.size());
    CHECK(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("degenerate extensions integrate like their base after averaging") {
  CounterRng rng(1007, 0);
  for (const auto& base :
       {make_lp(2.0), make_complete(1.0, {2}), make_complete(1.0, {2, 2})}) {
    const DegenerateExtension ext = make_degenerate_extension(base, 2);
    CHECK(ext.base == base);
    CHECK(ext.pair.k == base.k + 2);
    REQUIRE(ext.new_axes.size() == 2);

    for (int t = 0; t < 10; ++t) {
      const int n = 2 + static_cast<int>(rng.below(2));
      std::vector<double> weights;
      for (int i = 0; i < n; ++i) weights.push_back(rng.uniform(0.3, 1.8));
      const DiscreteMeasureSpace space{n, weights};
      const GridFunction f = random_function(space, ext.pair.k, rng);
      const GridFunction averaged = integrate_out_axes(f, ext.new_axes);
      const Complex lhs = integrate(ext.pair, f);
      const Complex rhs = integrate(base, averaged);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
  CHECK_THROWS_AS(make_degenerate_extension(make_gowers(2), 1),
                  ValidationError);  // not a uniform even-split pair
  CHECK_THROWS_AS(make_degenerate_extension(make_lp(2.0), 0), ValidationError);
}
