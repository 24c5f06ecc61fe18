#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "goodturing/oracle.hpp"
#include "goodturing/signed_log.hpp"
#include "goodturing/specfun.hpp"

using namespace goodturing;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST_CASE("SignedLog round trip and zero laws") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> expo(-300.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, expo(rng));
    // exp(log x) carries the rounding of log x scaled by |log x|.
    CHECK(rel(SignedLog::from_double(x).to_double(), x) <= 4e-16 * (1.0 + std::fabs(std::log(x))));
  }
  const SignedLog z = SignedLog::zero(), five = SignedLog::from_double(5.0);
  CHECK((z * five).is_zero());
  CHECK((five * z).is_zero());
  CHECK((z + five).to_double() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK((five + z).to_double() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK((five - five).is_zero());
  CHECK(z.pow(3).is_zero());
  CHECK_THROWS_AS(five / z, std::domain_error);
}

TEST_CASE("SignedLog signed arithmetic") {
  const SignedLog a = SignedLog::from_double(-3.0), b = SignedLog::from_double(2.0);
  CHECK((a * b).to_double() == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK((a + b).to_double() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK((b - a).to_double() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK((a / b).to_double() == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(a.pow(3).to_double() == doctest::Approx(-27.0).epsilon(1e-14));
  CHECK(a.pow(2).sign() == 1);
  // Far outside double range.
  const SignedLog big = SignedLog::from_log(5000.0);
  CHECK((big * big / big).logmag() == doctest::Approx(5000.0));
}

TEST_CASE("log_sum_exp matches direct sums and tolerates -inf") {
  const std::vector<double> xs{std::log(1.0), std::log(2.0), -INFINITY, std::log(3.5)};
  CHECK(std::exp(log_sum_exp(xs)) == doctest::Approx(6.5).epsilon(1e-15));
  CHECK(log_sum_exp(std::vector<double>{}) == -INFINITY);
  CHECK(log_add_exp(-INFINITY, -INFINITY) == -INFINITY);
  LogSumAccumulator acc;
  for (int i = 0; i < 1000; ++i) acc.add(1000.0);
  CHECK(acc.result() == doctest::Approx(1000.0 + std::log(1000.0)).epsilon(1e-15));
}

TEST_CASE("rising factorials") {
  CHECK(rising_factorial(0.5, 2).to_double() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(rising_factorial(3.0, 0).to_double() == 1.0);
  CHECK(rising_factorial(-2.0, 4).is_zero());
  CHECK(rising_factorial(-2.5, 3).to_double() == doctest::Approx(-2.5 * -1.5 * -0.5).epsilon(1e-15));
  CHECK(rising_factorial_step(1.0, 2, 0.5).to_double() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(rising_factorial_step(1.0, 3, 1.0).to_double() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(rising_factorial_step(-0.7, 1, 12.0).to_double() == doctest::Approx(-0.7).epsilon(1e-15));
  // (1 - 0.5)_{199} is about 1e370, beyond double range.
  CHECK(rising_factorial(0.5, 200).logmag() == doctest::Approx(std::lgamma(200.5) - std::lgamma(0.5)));
  CHECK_THROWS(rising_factorial(1.0, -1));
}

TEST_CASE("unit step reduces to the ordinary rising factorial") {
  for (double x : {-3.5, -1.0, 0.0, 0.25, 2.0, 17.3}) {
    for (int m = 0; m <= 40; ++m) {
      const SignedLog a = rising_factorial_step(x, m, 1.0), b = rising_factorial(x, m);
      CHECK(a.sign() == b.sign());
      if (!a.is_zero()) CHECK(a.logmag() == b.logmag());
    }
  }
}

TEST_CASE("Stirling triangle boundary conventions and hand values") {
  const StirlingTriangle tri(12, 0.5);
  CHECK(tri.entry(0, 0).to_double() == 1.0);
  for (int n = 1; n <= 12; ++n) {
    CHECK(tri.entry(n, 0).is_zero());
    CHECK(tri.entry(n, n + 1).is_zero());
    CHECK(tri.entry(n, n).to_double() == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 1; k <= n; ++k) CHECK(tri.entry(n, k).sign() == 1);
  }
  CHECK(tri.entry(1, 1).to_double() == doctest::Approx(1.0));
  CHECK(tri.entry(3, 1).to_double() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(tri.entry(3, 2).to_double() == doctest::Approx(1.5).epsilon(1e-14));

  // alpha = 0: unsigned Stirling numbers of the first kind.
  const StirlingTriangle s0(6, 0.0);
  CHECK(s0.entry(4, 2).to_double() == doctest::Approx(11.0).epsilon(1e-14));
  CHECK(s0.entry(5, 2).to_double() == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(s0.entry(5, 3).to_double() == doctest::Approx(35.0).epsilon(1e-14));
  CHECK(s0.entry(6, 3).to_double() == doctest::Approx(225.0).epsilon(1e-14));

  CHECK_THROWS_AS(StirlingTriangle(5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StirlingTriangle(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(stirling_row(3, 1.5), std::invalid_argument);
}

TEST_CASE("Stirling triangle agrees with set-partition enumeration") {
  for (double a : {-1.0, -0.5, 0.0, 0.25, 0.5, 0.9}) {
    const StirlingTriangle tri(10, a);
    for (int n = 1; n <= 10; ++n) {
      const auto brute = oracle_stirling_row(n, a);
      for (int k = 1; k <= n; ++k) {
        INFO("alpha=" << a << " n=" << n << " k=" << k);
        CHECK(rel(tri.entry(n, k).to_double(), brute[k]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("streamed rows match the stored triangle") {
  const StirlingTriangle tri(300, 0.3);
  for (int n : {0, 1, 7, 150, 300}) {
    const auto row = stirling_row(n, 0.3);
    const auto stored = tri.log_row(n);
    REQUIRE(row.size() == stored.size());
    for (std::size_t k = 0; k < row.size(); ++k) CHECK(row[k] == stored[k]);
  }
}

TEST_CASE("large rows stay finite in log space") {
  const auto row = stirling_row(3000, 0.5);
  for (std::size_t k = 1; k < row.size(); ++k) CHECK(std::isfinite(row[k]));
  // S_{n,1} = (1-alpha)_{n-1}
  CHECK(rel(row[1], rising_factorial(0.5, 2999).logmag()) <= 1e-12);
  CHECK(row[3000] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("binomials and factorials") {
  CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-13));
  CHECK(log_binomial(7, 0) == 0.0);
  CHECK(std::exp(log_factorial(5)) == doctest::Approx(120.0).epsilon(1e-14));
  CHECK_THROWS(log_binomial(3, 4));
}
