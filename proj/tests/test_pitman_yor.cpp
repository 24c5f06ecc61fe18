#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include "goodturing/gibbs.hpp"
#include "goodturing/pitman_yor.hpp"

using namespace goodturing;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Composite Simpson on [0, 1] after x = u^{1/a}, which flattens the x^{a-1}
// singularity at 0. Needs the density to be bounded near 1.
template <typename F>
double integrate_beta_like(F f, double a, int panels = 20000) {
  auto g = [&](double u) {
    u = std::max(u, 1e-12);
    const double x = std::pow(u, 1.0 / a);
    if (x >= 1.0) return 0.0;
    return f(x) * std::pow(u, 1.0 / a - 1.0) / a;
  };
  const double h = 1.0 / panels;
  double sum = g(0.0) + g(1.0 - 1e-15);
  for (int i = 1; i < panels; ++i) sum += g(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

double plain_rising(double x, int m, double step = 1.0) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x + i * step;
  return r;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(PYParams(0.5, 0.5));
  CHECK_NOTHROW(PYParams(0.5, 0.0));
  CHECK_NOTHROW(PYParams(0.0, 1.0));
  CHECK_THROWS_AS(PYParams(0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(PYParams(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PYParams(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PYParams(0.5, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(PYParams(-1.0, 2.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(PYParams(-1.0, 3.0), std::invalid_argument);
  CHECK_NOTHROW(PYParams(-1.0, 3.0, 3));
  CHECK(PYParams::finite(-0.5, 4).theta() == 2.0);
}

TEST_CASE("py_weight examples and recursion") {
  CHECK(py_weight(PYParams(0.5, 0.5), 1, 1).to_double() == doctest::Approx(1.0));
  CHECK(py_weight(PYParams(0.5, 0.5), 2, 2).to_double() == doctest::Approx(2.0 / 3).epsilon(1e-14));
  const double v21 = py_weight(PYParams(0.5, 0.5), 2, 1).to_double();
  const double v22 = py_weight(PYParams(0.5, 0.5), 2, 2).to_double();
  CHECK((1 - 0.5) * v21 + v22 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(py_weight(PYParams::finite(-1.0, 3), 5, 4), std::out_of_range);
  CHECK(py_weight(PYParams::finite(-1.0, 3), 5, 3).sign() == 1);
}

TEST_CASE("model weights match the direct formula") {
  for (const PYParams& p : {PYParams(0.5, 0.5), PYParams(0.9, -0.45), PYParams(0.0, 3.0),
                            PYParams::finite(-0.5, 7)}) {
    const PitmanYorModel m(p, 120);
    for (int n = 1; n <= 120; n += 7) {
      for (int k = 1; k <= n; ++k) {
        const SignedLog tab = m.weight(n, k);
        if (p.s() && k > *p.s()) {
          CHECK(tab.is_zero());
          continue;
        }
        CHECK(tab.logmag() == doctest::Approx(py_weight(p, n, k).logmag()).epsilon(1e-12));
      }
    }
    CHECK(max_recursion_residual(m, 100) <= 1e-10);
  }
}

TEST_CASE("closed-form estimator examples") {
  CHECK(py_exact_gt(PYParams(0.5, 0.5), 1, 2) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(py_exact_gt(PYParams(0.5, 1.0), 2, 10) == doctest::Approx(1.5 / 11).epsilon(1e-15));
  CHECK(py_exact_gt(PYParams(0.0, 1.0), 3, 10) == doctest::Approx(3.0 / 11).epsilon(1e-15));
  CHECK_THROWS_AS(py_exact_gt(PYParams(0.5, 1.0), 3, 2), std::out_of_range);
}

TEST_CASE("Stirling-sum estimator equals the closed form") {
  for (double a : {0.1, 0.5, 0.9}) {
    for (double t : {-a / 2, 1.0, 10.0}) {
      const PYParams p(a, t);
      const PitmanYorModel m(p, 61);
      const StirlingTriangle tri(60, a);
      for (int n = 1; n <= 60; ++n) {
        for (int l = 1; l <= n; ++l) CHECK(rel(exact_gt(m, tri, l, n), py_exact_gt(p, l, n)) <= 1e-9);
      }
    }
  }
  // Finite symmetric Dirichlet through the same sums.
  const PYParams fin = PYParams::finite(-1.0, 4);
  const PitmanYorModel m(fin, 31);
  for (int n = 1; n <= 30; ++n) {
    for (int l = 1; l <= n; ++l) CHECK(rel(exact_gt(m, l, n), jeffreys_estimate(4, l, n)) <= 1e-9);
  }
}

TEST_CASE("bnp predictive depends only on n_j and n") {
  const PYParams p(0.5, 0.5);
  const Composition c{2, 1};
  CHECK(py_bnp_predict(p, c, 1) == doctest::Approx(3.0 / 7).epsilon(1e-15));
  CHECK(py_bnp_predict(p, c, 2) == doctest::Approx(1.0 / 7).epsilon(1e-15));
  const PitmanYorModel m(p, 10);
  CHECK(py_bnp_predict(p, c, 1) == doctest::Approx(predict_old(m, 3, 2, 2)).epsilon(1e-14));
  const Composition swapped{1, 2};
  CHECK(py_bnp_predict(p, swapped, 2) == py_bnp_predict(p, c, 1));
  CHECK(py_bnp_predict(p, swapped, 1) == py_bnp_predict(p, c, 2));
  CHECK(py_bnp_predict(p, c, 1) == py_exact_gt(p, 2, 3));
  CHECK_THROWS_AS(py_bnp_predict(p, c, 3), std::out_of_range);
  CHECK_THROWS_AS(py_bnp_predict(p, c, 0), std::out_of_range);
}

TEST_CASE("Johnson and Jeffreys special cases") {
  CHECK(johnson_estimate(1.0, 3, 2, 5) == doctest::Approx(3.0 / 8).epsilon(1e-15));
  CHECK(jeffreys_estimate(7, 2, 5) == doctest::Approx(3.0 / 12).epsilon(1e-15));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const int s = std::uniform_int_distribution<int>(1, 40)(rng);
    const int n = std::uniform_int_distribution<int>(1, 100)(rng);
    const int l = std::uniform_int_distribution<int>(1, n)(rng);
    CHECK(johnson_estimate(1.0, s, l, n) == py_exact_gt(PYParams::finite(-1.0, s), l, n));
    CHECK(jeffreys_estimate(s, l, n) == doctest::Approx((l + 1.0) / (n + s)).epsilon(1e-15));
  }
  CHECK_THROWS(johnson_estimate(0.0, 3, 1, 2));
  CHECK_THROWS(johnson_estimate(1.0, 0, 1, 2));
}

TEST_CASE("PD EPPF equals direct evaluation on random compositions") {
  std::mt19937_64 rng(12);
  const PYParams params[] = {PYParams(0.5, 0.5), PYParams(0.2, 4.0), PYParams::finite(-0.5, 5)};
  for (int trial = 0; trial < 1000; ++trial) {
    const PYParams& p = params[trial % 3];
    const int k_max = p.s() ? *p.s() : 6;
    std::vector<int> parts(static_cast<std::size_t>(std::uniform_int_distribution<int>(1, k_max)(rng)));
    for (int& x : parts) x = std::uniform_int_distribution<int>(1, 5)(rng);
    const Composition c(parts);
    double direct = plain_rising(p.theta() + p.alpha(), c.k() - 1, p.alpha()) /
                    plain_rising(p.theta() + 1.0, c.n() - 1);
    for (int nj : c.parts()) direct *= plain_rising(1.0 - p.alpha(), nj - 1);
    CHECK(rel(eppf(PitmanYorModel(p, 40), c), direct) <= 1e-12);
  }
}

TEST_CASE("structural density") {
  for (double x : {0.01, 0.3, 0.77}) {
    CHECK(structural_density(PYParams(0.0, 1.0), x) == doctest::Approx(1.0).epsilon(1e-13));
    // beta(0.5, 1): 0.5 x^{-1/2}
    CHECK(structural_density(PYParams(0.5, 0.5), x) == doctest::Approx(0.5 / std::sqrt(x)).epsilon(1e-13));
  }
  for (const PYParams& p : {PYParams(0.0, 1.0), PYParams(0.5, 0.5), PYParams(0.25, 2.0), PYParams(0.75, 1.0)}) {
    const double mass = integrate_beta_like([&](double x) { return structural_density(p, x); }, 1 - p.alpha());
    const double mean =
        integrate_beta_like([&](double x) { return x * structural_density(p, x); }, 1 - p.alpha());
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(mean == doctest::Approx((1 - p.alpha()) / (1 + p.theta())).epsilon(1e-8));
  }
  CHECK_THROWS_AS(structural_density(PYParams::finite(-1.0, 3), 0.5), std::domain_error);
  CHECK_THROWS_AS(structural_density(PYParams(0.5, 0.5), 1.0), std::out_of_range);
}

TEST_CASE("expected K from the structural law") {
  CHECK(expected_k_structural(PYParams(0.3, 1.0), 1) == 1.0);
  CHECK(expected_k_structural(PYParams(0.5, 0.5), 2) == doctest::Approx(5.0 / 3).epsilon(1e-15));
  double harmonic = 0.0;
  for (int i = 0; i < 10; ++i) harmonic += 1.0 / (1.0 + i);
  CHECK(expected_k_structural(PYParams(0.0, 1.0), 10) == doctest::Approx(harmonic).epsilon(1e-15));
  for (double a : {0.0, 0.25, 0.5, 0.75}) {
    const PYParams p(a, 1.5);
    const PitmanYorModel m(p, 200);
    const StirlingTriangle tri(200, a);
    for (int n = 1; n <= 200; n += 11) CHECK(rel(expected_k_structural(p, n), expected_k(m, tri, n)) <= 1e-8);
  }
  CHECK_THROWS_AS(expected_k_structural(PYParams::finite(-1.0, 3), 4), std::domain_error);
}
