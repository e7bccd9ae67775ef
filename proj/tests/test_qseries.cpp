#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle/exact.hpp"
#include "qpr/error.hpp"
#include "qpr/qseries.hpp"

using namespace qpr;
using oracle::Q;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("QContext validates its inputs") {
  CHECK_NOTHROW(QContext(0.5, 0.0, {1.0, 0.0}));
  CHECK_THROWS_AS(QContext(1.0, 0.0, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(QContext(0.0, 0.0, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(QContext(0.5, -1.0, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(QContext(0.5, 0.0, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(QContext(0.5, 0.0, {1.0, 0.0}, {0.0, 10}), DomainError);
  CHECK_THROWS_AS(QContext(0.5, 0.0, {1.0, 0.0}, {1e-15, 0}), DomainError);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer({0.7, 0.2}, 0.3, 0) == Complex(1.0, 0.0));
  CHECK(pochhammer(0.5, 0.5, 2).real() == oracle::to_double(oracle::poch(Q(1, 2), Q(1, 2), 2)));
  CHECK(pochhammer(0.5, 0.5, 2).real() == 0.375);
  CHECK_THROWS_AS(pochhammer(0.5, 0.5, -1), DomainError);
  CHECK_THROWS_AS(pochhammer_inf(0.5, 1.0), DomainError);

  // 80 exact factors leave a tail below 2^-80.
  const double ref = oracle::to_double(oracle::poch(Q(1, 2), Q(1, 2), 80));
  CHECK(pochhammer_inf(0.5, 0.5).real() == doctest::Approx(ref).epsilon(1e-15));
  CHECK(pochhammer_inf(0.5, 0.5).real() == doctest::Approx(0.2887880950866024).epsilon(1e-14));
}

TEST_CASE("q_binomial") {
  CHECK(q_binomial(9, 0, 0.3) == 1.0);
  CHECK(q_binomial(4, 2, 0.5) == doctest::Approx(oracle::to_double(oracle::qbinom(4, 2, Q(1, 2)))));
  CHECK(q_binomial(4, 2, 0.5) == doctest::Approx(2.1875));
  CHECK_THROWS_AS(q_binomial(4, 5, 0.5), DomainError);
  CHECK_THROWS_AS(q_binomial(4, -1, 0.5), DomainError);
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng() % 40);
    const int k = n == 0 ? 0 : static_cast<int>(rng() % (n + 1));
    const double q = 0.05 + 0.9 * (rng() % 1000) / 1000.0;
    REQUIRE(q_binomial(n, k, q) == doctest::Approx(q_binomial(n, n - k, q)).epsilon(1e-13));
  }
}

TEST_CASE("LogPochhammerTable") {
  const LogPochhammerTable t(0.3, 0.5, 20);
  CHECK(t.size() == 20);
  CHECK(t[0] == 0.0);
  for (int j = 0; j <= 20; ++j) {
    REQUIRE(std::exp(t[j]) == doctest::Approx(pochhammer(0.3, 0.5, j).real()).epsilon(1e-14));
  }
  CHECK(std::exp(t.log_inf()) == doctest::Approx(0.5101178266339880).epsilon(1e-14));
  CHECK_THROWS_AS(LogPochhammerTable(1.0, 0.5, 3), DomainError);
}

TEST_CASE("Euler product and series agree") {
  const CrossCheck a = euler_product_series_check(0.0, 0.5);
  CHECK(a.lhs == Complex(1.0, 0.0));
  CHECK(a.rhs == Complex(1.0, 0.0));
  const CrossCheck b = euler_product_series_check(1.0, 0.5);
  CHECK(b.lhs == Complex(0.0, 0.0));
  CHECK(std::abs(b.rhs) < 1e-15);
  const CrossCheck c = euler_product_series_check(0.3, 0.5);
  CHECK(rel(c.lhs, c.rhs) < 1e-13);
  const CrossCheck d = euler_product_series_check({-0.8, 1.4}, 0.7);
  CHECK(rel(d.lhs, d.rhs) < 1e-12);
}

TEST_CASE("q-binomial theorem on a grid") {
  for (double q : {0.2, 0.5, 0.8}) {
    for (double a : {-0.7, 0.3, 0.9}) {
      for (Complex z : {Complex(0.5, 0.0), Complex(-0.3, 0.4), Complex(0.0, -0.8)}) {
        const Complex lhs = pochhammer_inf(a * z, q) / pochhammer_inf(z, q);
        REQUIRE(rel(q_binomial_sum(a, z, q), lhs) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(q_binomial_sum(0.5, 1.0, 0.5), DomainError);
}

TEST_CASE("Ramanujan A_q and B_q") {
  CHECK(ramanujan_a(0.7, 0.0) == Complex(1.0, 0.0));
  CHECK(b_function(0.7, 0.0) == Complex(1.0, 0.0));

  // 50 exact terms; the omitted tail is below 2^-2500.
  const double a_ref = oracle::to_double(oracle::b_partial(Q(1, 2), Q(-1), 50));
  const double b_ref = oracle::to_double(oracle::b_partial(Q(1, 2), Q(1), 50));
  const double b_quarter = oracle::to_double(oracle::b_partial(Q(1, 2), Q(1, 4), 50));
  CHECK(ramanujan_a(0.5, 1.0).real() == doctest::Approx(a_ref).epsilon(1e-15));
  CHECK(a_ref == doctest::Approx(0.160763788932089).epsilon(1e-14));
  CHECK(b_function(0.5, 1.0).real() == doctest::Approx(b_ref).epsilon(1e-15));
  CHECK(b_ref == doctest::Approx(2.17266875084966).epsilon(1e-14));
  CHECK(b_function(0.5, 0.25).real() == doctest::Approx(b_quarter).epsilon(1e-15));
  CHECK(b_quarter == doctest::Approx(1.26050986647912).epsilon(1e-14));

  CHECK(ramanujan_a(0.5, -1.0).real() == doctest::Approx(b_function(0.5, 1.0).real()).epsilon(1e-15));
  const Complex w(2.5, -1.5);
  CHECK(rel(ramanujan_a(0.6, -w), b_function(0.6, w)) < 1e-14);
}

TEST_CASE("|A_q(z)| <= B_q(|z|)") {
  for (int i = 1; i <= 9; ++i) {
    const double q = 0.1 * i;
    for (double r : {0.0, 0.5, 1.0, 3.0, 10.0}) {
      for (int a = 0; a < 12; ++a) {
        const Complex z = std::polar(r, a * kPi / 6);
        REQUIRE(std::abs(ramanujan_a(q, z)) <= b_function(q, r).real() * (1 + 1e-14));
      }
    }
  }
}

TEST_CASE("A_q derivative: bound and finite difference") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uq(0.1, 0.9), ur(0.0, 10.0), ua(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const double q = uq(rng);
    const Complex z = std::polar(ur(rng), ua(rng));
    const Complex d = ramanujan_a_derivative(q, z);
    REQUIRE(std::abs(d) <= q / (1 - q) * b_function(q, std::abs(z)).real() * (1 + 1e-14));
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const Complex fd = (ramanujan_a(q, z + h) - ramanujan_a(q, z - h)) / (2 * h);
    REQUIRE(std::abs(fd - d) <= 1e-6 * std::max(std::abs(d), 1e-300) + 1e-9);
  }
}

TEST_CASE("theta function") {
  CHECK_THROWS_AS(theta(0.0, 0.5), DomainError);
  const double ref = oracle::to_double(oracle::theta_partial(Q(1, 2), Q(1), 40));
  CHECK(theta(1.0, 0.5).real() == doctest::Approx(ref).epsilon(1e-15));
  CHECK(ref == doctest::Approx(2.12893682721188).epsilon(1e-14));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ur(0.1, 5.0), ua(-kPi, kPi), uq(0.1, 0.9);
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(ur(rng), ua(rng));
    const double q = uq(rng);
    const Complex a = theta(z, q), b = theta(1.0 / z, q);
    // theta(|z|, q) is the sum of the absolute values of the terms.
    REQUIRE(std::abs(a - b) <= 1e-13 * theta(std::abs(z), q).real());
  }
}

TEST_CASE("Jacobi triple product at z = 0.7 + 0.2i, q = 0.6") {
  const Complex z(0.7, 0.2);
  const double q = 0.6;
  const Complex prod = pochhammer_inf(q * q, q * q) * pochhammer_inf(-q * z, q * q) *
                       pochhammer_inf(-q / z, q * q);
  CHECK(rel(theta(z, q), prod) < 1e-12);
  CHECK(rel(theta(z, q), Complex(2.49901468638618, -0.216632450609862)) < 1e-13);
}

TEST_CASE("theta stays finite for large arguments") {
  const LogPolar t = theta_lp(1e150, 0.5);
  CHECK(std::isfinite(t.log_mag));
  CHECK(t.log_mag > 300.0);
}

TEST_CASE("remainder bounds") {
  const Remainder r1 = remainder_r1(0.5, 2, 0.5);
  CHECK(r1.value == doctest::Approx(-0.229898413102394).epsilon(1e-12));
  CHECK(r1.bound == doctest::Approx(0.317897470537516).epsilon(1e-12));
  CHECK(std::abs(r1.value) <= r1.bound);

  const Remainder r2 = remainder_r2(0.5, 2, 0.5);
  CHECK(r2.value == doctest::Approx(0.298529982295649).epsilon(1e-12));
  CHECK(r2.bound == doctest::Approx(0.432843327431883).epsilon(1e-12));
  CHECK(std::abs(r2.value) <= r2.bound);

  const Remainder r3 = remainder_r2(1.0, 3, 0.5);
  CHECK(std::abs(r3.value) <= r3.bound);
  CHECK(r3.bound == doctest::Approx(0.865686654863766).epsilon(1e-12));

  // The perturbation vanishes as n grows; the bound falls by q per step.
  CHECK(std::abs(remainder_r1(0.5, 200, 0.5).value) < 1e-50);
  for (int n = 0; n < 30; ++n) {
    REQUIRE(remainder_r1(0.5, n + 1, 0.5).bound < remainder_r1(0.5, n, 0.5).bound);
  }
  const Remainder tiny = remainder_r2(1e-12, 1, 0.5);
  CHECK(std::abs(tiny.value) < 1e-11);
  CHECK(tiny.bound < 1e-11);

  CHECK_THROWS_AS(remainder_r1(0.0, 2, 0.5), DomainError);
  CHECK_THROWS_AS(remainder_r1(-1.0, 2, 0.5), DomainError);
  CHECK_THROWS_AS(remainder_r2(2.0, 2, 0.5), DomainError);
  CHECK_THROWS_AS(remainder_r2(-0.5, 2, 0.5), DomainError);
}

TEST_CASE("Pochhammer inequalities for 0 <= a < 1, b >= 0") {
  for (double q : {0.2, 0.5, 0.9}) {
    for (double a : {0.0, 0.3, 0.99}) {
      for (int n : {1, 5, 40}) {
        const double v = pochhammer(a, q, n).real();
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
        REQUIRE(pochhammer(-a * 3, q, n).real() >= 1.0);
      }
      REQUIRE(pochhammer_inf(a, q).real() > 0.0);
      REQUIRE(pochhammer_inf(-a, q).real() >= 1.0);
    }
  }
}

TEST_CASE("|e^w - 1| <= |w| e^|w|") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ur(0.0, 5.0), ua(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const Complex w = std::polar(ur(rng), ua(rng));
    REQUIRE(std::abs(std::exp(w) - 1.0) <= std::abs(w) * std::exp(std::abs(w)) * (1 + 1e-15));
  }
}

TEST_CASE("term cap raises ConvergenceError") {
  SeriesOptions tight;
  tight.max_terms = 3;
  CHECK_THROWS_AS(pochhammer_inf(0.5, 0.99, tight), ConvergenceError);
  CHECK_THROWS_AS(theta(1.0, 0.999, tight), ConvergenceError);
}
