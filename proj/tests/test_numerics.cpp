#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracle/exact.hpp"
#include "qpr/error.hpp"
#include "qpr/numerics.hpp"

using namespace qpr;

TEST_CASE("phase normalization maps into (-pi, pi]") {
  CHECK(normalize_phase(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_phase(kPi) == doctest::Approx(kPi));
  CHECK(normalize_phase(3 * kPi) == doctest::Approx(kPi));
  CHECK(normalize_phase(kTwoPi) == doctest::Approx(0.0));
  CHECK(normalize_phase(-0.5) == doctest::Approx(-0.5));
}

TEST_CASE("lp_from_complex") {
  const LogPolar one = lp_from_complex({1.0, 0.0});
  CHECK(one.log_mag == 0.0);
  CHECK(one.phase == 0.0);

  const LogPolar m2 = lp_from_complex({-2.0, 0.0});
  CHECK(m2.log_mag == doctest::Approx(std::log(2.0)));
  CHECK(m2.phase == doctest::Approx(kPi));

  const LogPolar zero = lp_from_complex({0.0, 0.0});
  CHECK(zero.log_mag == kNegInf);
  CHECK(zero.phase == 0.0);
  CHECK(zero.is_zero());
}

TEST_CASE("complex round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  SUBCASE("moderate magnitudes to 1e-14") {
    std::uniform_real_distribution<double> expo(-30.0, 30.0);
    for (int i = 0; i < 2000; ++i) {
      const Complex w = std::polar(std::pow(10.0, expo(rng)), ang(rng));
      REQUIRE(std::abs(lp_from_complex(w).to_complex() - w) <= 1e-14 * std::abs(w));
    }
  }
  SUBCASE("full range to the resolution of log_mag") {
    // log_mag near 690 carries about 1e-13 absolute, which bounds the
    // relative error of the magnitude.
    std::uniform_real_distribution<double> expo(-299.0, 299.0);
    for (int i = 0; i < 2000; ++i) {
      const Complex w = std::polar(std::pow(10.0, expo(rng)), ang(rng));
      const LogPolar lp = lp_from_complex(w);
      const double tol = 4.0 * 2.220446049250313e-16 * std::max(1.0, std::abs(lp.log_mag));
      REQUIRE(std::abs(lp.to_complex() - w) <= tol * std::abs(w));
      REQUIRE(lp_from_complex(lp.to_complex()).log_mag == doctest::Approx(lp.log_mag).epsilon(1e-15));
    }
  }
}

TEST_CASE("lp_pow_int examples") {
  const LogPolar sq = lp_pow_int(LogPolar::make(0.0, kPi), 2);
  CHECK(sq.log_mag == 0.0);
  CHECK(std::abs(sq.phase) < 1e-15);

  const LogPolar inv = lp_pow_int(LogPolar::make(std::log(2.0), 0.0), -3);
  CHECK(inv.log_mag == doctest::Approx(-3 * std::log(2.0)));
  CHECK(inv.phase == 0.0);

  const LogPolar cube = lp_pow_int(LogPolar::make(0.0, kTwoPi / 3), 3);
  const Complex direct = std::pow(std::polar(1.0, kTwoPi / 3), 3);
  CHECK(std::abs(cube.to_complex() - direct) < 1e-14);
  CHECK(std::abs(cube.phase) < 1e-14);

  CHECK_THROWS_AS(lp_pow_int(LogPolar::zero(), -1), DomainError);
  CHECK(lp_pow_int(LogPolar::zero(), 0).log_mag == 0.0);
  CHECK(lp_pow_int(LogPolar::zero(), 4).is_zero());
}

TEST_CASE("lp_pow_int agrees with repeated multiplication") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mag(-3.0, 3.0), ang(-kPi, kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const LogPolar b = LogPolar::make(mag(rng), ang(rng));
    for (std::int64_t k = -64; k <= 64; ++k) {
      LogPolar acc = LogPolar::one();
      const LogPolar step = k >= 0 ? b : lp_inverse(b);
      for (std::int64_t j = 0; j < std::abs(k); ++j) acc = acc * step;
      const LogPolar p = lp_pow_int(b, k);
      REQUIRE(std::abs(acc.log_mag - p.log_mag) <= 1e-12 * std::max(1.0, std::abs(p.log_mag)));
      REQUIRE(std::abs(normalize_phase(acc.phase - p.phase)) <= 1e-12);
    }
  }
}

TEST_CASE("sum_rescaled examples") {
  SUBCASE("exact cancellation") {
    const std::vector<LogPolar> t = {lp_from_real(1.0), lp_from_real(-1.0)};
    const SummationResult r = sum_rescaled(t);
    CHECK(r.value == Complex(0.0, 0.0));
    CHECK(r.rescale_log == 0.0);
    CHECK(r.term_count == 2);
  }
  SUBCASE("cancellation far outside double range") {
    const double big = std::log(1e200) * 3;  // 1e600
    const std::vector<LogPolar> t = {LogPolar::make(big, 0.0), LogPolar::make(big, kPi)};
    const SummationResult r = sum_rescaled(t);
    CHECK(std::abs(r.value) < 1e-15);
    CHECK(std::isfinite(r.value.real()));
    CHECK(r.total().is_zero());
  }
  SUBCASE("geometric terms against the exact sum") {
    const std::vector<LogPolar> t = {lp_from_real(1.0), lp_from_real(0.5), lp_from_real(0.25)};
    const oracle::Q exact = oracle::Q(1) + oracle::Q(1, 2) + oracle::Q(1, 4);
    CHECK(sum_rescaled(t).total().to_complex().real() == oracle::to_double(exact));
  }
  SUBCASE("empty and all-zero input") {
    CHECK(sum_rescaled({}).total().is_zero());
    const std::vector<LogPolar> z = {LogPolar::zero(), LogPolar::zero()};
    CHECK(sum_rescaled(z).total().is_zero());
  }
}

TEST_CASE("sum_rescaled is permutation stable for well-conditioned input") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mag(-20.0, 5.0), ang(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LogPolar> t;
    double abs_sum = 0.0;
    for (int i = 0; i < 1000; ++i) {
      t.push_back(LogPolar::make(mag(rng), ang(rng)));
      abs_sum += std::exp(t.back().log_mag);
    }
    const Complex ref = sum_rescaled(t).total().to_complex();
    REQUIRE(abs_sum / std::abs(ref) < 1e6);
    for (int p = 0; p < 5; ++p) {
      std::shuffle(t.begin(), t.end(), rng);
      const Complex v = sum_rescaled(t).total().to_complex();
      REQUIRE(std::abs(v - ref) <= 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("sum_rescaled of a huge geometric series stays finite") {
  std::vector<LogPolar> t;
  for (int k = 0; k < 50; ++k) t.push_back(LogPolar::make(1000.0 - k * std::log(2.0), 0.0));
  const SummationResult r = sum_rescaled(t);
  CHECK(std::isfinite(r.value.real()));
  CHECK(r.rescale_log == doctest::Approx(1000.0));
  CHECK(r.total().log_mag == doctest::Approx(1000.0 + std::log(2.0 - std::pow(2.0, -49))));
}

TEST_CASE("RescaledAccumulator matches sum_rescaled") {
  std::vector<LogPolar> t;
  RescaledAccumulator acc;
  for (int k = 0; k < 30; ++k) {
    t.push_back(LogPolar::make(-0.5 * k, 0.7 * k));
    acc.add(t.back());
  }
  const Complex a = acc.value().to_complex(), b = sum_rescaled(t).total().to_complex();
  CHECK(std::abs(a - b) < 1e-14 * std::abs(b));
}

TEST_CASE("two_sum is error free") {
  const TwoSum s = two_sum(1.0, 1e-17);
  CHECK(s.sum == 1.0);
  CHECK(s.err == 1e-17);
}

TEST_CASE("floor_frac_product") {
  const ProductFloorFrac a = floor_frac_product(3, 0.25);
  CHECK(a.floor == 0);
  CHECK(a.frac == 0.75);
  const ProductFloorFrac b = floor_frac_product(7, -0.75);
  CHECK(b.floor == -6);
  CHECK(b.frac == doctest::Approx(0.75));
  // Large n: the exact product keeps the fractional part accurate.
  const double s2 = std::sqrt(2.0);
  const ProductFloorFrac c = floor_frac_product(1'000'000'007, s2);
  const long double ref = static_cast<long double>(1'000'000'007) * static_cast<long double>(s2);
  CHECK(c.floor == static_cast<std::int64_t>(std::floor(ref)));
  CHECK(c.frac == doctest::Approx(static_cast<double>(ref - std::floor(ref))).epsilon(1e-9));
  for (std::int64_t n = -50; n <= 50; ++n) {
    const ProductFloorFrac p = floor_frac_product(n, 0.1);
    REQUIRE(p.frac >= 0.0);
    REQUIRE(p.frac < 1.0);
  }
}
