#include "qpr/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qpr/error.hpp"

namespace qpr {
namespace {

void require_unit_nome(double q, const char* who) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError(std::string(who) + ": requires 0 < q < 1");
  }
}

// Sums t_0, t_1, ... where next(k, t_k) returns t_{k+1} and sup_ratio(k)
// bounds |t_{j+1} / t_j| for every j >= k. Once that bound drops below one
// the remaining tail is majorized geometrically.
template <class Next, class SupRatio>
LogPolar sum_series(LogPolar first, Next next, SupRatio sup_ratio, const SeriesOptions& options,
                    const char* who) {
  std::vector<LogPolar> terms;
  RescaledAccumulator running;
  const double log_tol = std::log(options.tol);
  // Near a zero of the sum the relative test cannot pass; the rounding floor
  // of the largest term seen so far then serves as the reference instead.
  const double log_eps = std::log(std::numeric_limits<double>::epsilon());
  double max_log = kNegInf;
  LogPolar t = first;
  for (std::int64_t k = 0;; ++k) {
    if (k >= options.max_terms) {
      throw ConvergenceError(std::string(who) + ": tail test not met within max_terms");
    }
    terms.push_back(t);
    running.add(t);
    max_log = std::max(max_log, t.log_mag);
    const double r = sup_ratio(k);
    if (r < 1.0) {
      if (t.is_zero()) break;
      const double tail_log = t.log_mag + std::log(r) - std::log1p(-r);
      const double ref_log = std::max(running.log_abs(), max_log + log_eps);
      if (tail_log <= log_tol + ref_log || r == 0.0) break;
    }
    t = next(k, t);
  }
  return sum_rescaled(terms).total();
}

// sum_{k>=0} q^{k^2} w^k / (q;q)_k
LogPolar qsquare_series(double q, Complex w, const SeriesOptions& options, const char* who) {
  require_unit_nome(q, who);
  const double lq = std::log(q);
  const LogPolar lw = lp_from_complex(w);
  const double aw = std::abs(w);
  auto next = [&](std::int64_t k, const LogPolar& t) {
    const double kd = static_cast<double>(k);
    return LogPolar::make(t.log_mag + (2.0 * kd + 1.0) * lq + lw.log_mag -
                              std::log1p(-std::pow(q, kd + 1.0)),
                          t.phase + lw.phase);
  };
  auto sup = [&](std::int64_t k) {
    const double kd = static_cast<double>(k);
    return std::pow(q, 2.0 * kd + 1.0) * aw / (1.0 - std::pow(q, kd + 1.0));
  };
  return sum_series(LogPolar::one(), next, sup, options, who);
}

// sum_{k>=1} k q^{k^2} w^{k-1} / (q;q)_k
LogPolar qsquare_derivative_series(double q, Complex w, const SeriesOptions& options,
                                   const char* who) {
  require_unit_nome(q, who);
  const double lq = std::log(q);
  const LogPolar lw = lp_from_complex(w);
  const double aw = std::abs(w);
  // u_j = (j+1) q^{(j+1)^2} w^j / (q;q)_{j+1}
  const LogPolar first = LogPolar::make(lq - std::log1p(-q), 0.0);
  auto next = [&](std::int64_t j, const LogPolar& u) {
    const double jd = static_cast<double>(j);
    return LogPolar::make(u.log_mag + std::log((jd + 2.0) / (jd + 1.0)) + (2.0 * jd + 3.0) * lq +
                              lw.log_mag - std::log1p(-std::pow(q, jd + 2.0)),
                          u.phase + lw.phase);
  };
  auto sup = [&](std::int64_t j) {
    const double jd = static_cast<double>(j);
    return (jd + 2.0) / (jd + 1.0) * std::pow(q, 2.0 * jd + 3.0) * aw /
           (1.0 - std::pow(q, jd + 2.0));
  };
  return sum_series(first, next, sup, options, who);
}

}  // namespace

QContext::QContext(double q, double alpha, Complex z, SeriesOptions options)
    : q_(q), alpha_(alpha), z_(z), log_q_(0.0), options_(options) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("QContext: q must lie in (0,1)");
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("QContext: alpha must be finite and > -1");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z == Complex{0.0, 0.0}) {
    throw DomainError("QContext: z must be finite and nonzero");
  }
  if (!(options.tol > 0.0) || options.max_terms < 1) {
    throw DomainError("QContext: tol must be positive and max_terms >= 1");
  }
  log_q_ = std::log(q);
}

Complex pochhammer(Complex a, double q, std::int64_t n) {
  if (n < 0) throw DomainError("pochhammer: n must be >= 0");
  Complex p{1.0, 0.0};
  double qk = 1.0;
  for (std::int64_t k = 0; k < n; ++k) {
    p *= Complex{1.0, 0.0} - a * qk;
    qk *= q;
  }
  return p;
}

Complex pochhammer_inf(Complex a, double q, const SeriesOptions& options) {
  if (!(std::abs(q) < 1.0)) throw DomainError("pochhammer_inf: requires |q| < 1");
  const double aq = std::abs(q);
  const double aa = std::abs(a);
  Complex p{1.0, 0.0};
  double qk = 1.0;
  for (std::int64_t k = 0;; ++k) {
    if (std::expm1(aa * std::abs(qk) / (1.0 - aq)) <= options.tol) break;
    if (k >= options.max_terms) {
      throw ConvergenceError("pochhammer_inf: tail test not met within max_terms");
    }
    p *= Complex{1.0, 0.0} - a * qk;
    if (p == Complex{0.0, 0.0}) break;
    qk *= q;
  }
  return p;
}

double q_binomial(std::int64_t n, std::int64_t k, double q) {
  if (k < 0 || n < 0 || k > n) throw DomainError("q_binomial: requires 0 <= k <= n");
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (std::int64_t j = 1; j <= k; ++j) {
    r *= (1.0 - std::pow(q, static_cast<double>(n - k + j))) /
         (1.0 - std::pow(q, static_cast<double>(j)));
  }
  return r;
}

LogPochhammerTable::LogPochhammerTable(double a, double q, std::int64_t n,
                                       const SeriesOptions& options) {
  require_unit_nome(q, "LogPochhammerTable");
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("LogPochhammerTable: requires 0 <= a < 1");
  if (n < 0) throw DomainError("LogPochhammerTable: n must be >= 0");
  prefix_.resize(static_cast<std::size_t>(n) + 1);
  double sum = 0.0, comp = 0.0;
  double aqj = a;
  prefix_[0] = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    const auto [s, e] = two_sum(sum, std::log1p(-aqj));
    sum = s;
    comp += e;
    prefix_[static_cast<std::size_t>(j) + 1] = sum + comp;
    aqj *= q;
  }
  // Continue to the limit: the tail sum_{j>=J} |log(1 - a q^j)| is at most
  // a q^J / ((1 - q)(1 - a q^J)).
  for (std::int64_t j = n;; ++j) {
    if (aqj == 0.0 || aqj / ((1.0 - q) * (1.0 - aqj)) <= 0.1 * options.tol) break;
    if (j - n >= options.max_terms) {
      throw ConvergenceError("LogPochhammerTable: limit not reached within max_terms");
    }
    const auto [s, e] = two_sum(sum, std::log1p(-aqj));
    sum = s;
    comp += e;
    aqj *= q;
  }
  log_inf_ = sum + comp;
}

CrossCheck euler_product_series_check(Complex z, double q, const SeriesOptions& options) {
  require_unit_nome(q, "euler_product_series_check");
  const Complex lhs = pochhammer_inf(z, q, options);
  // sum q^{k(k-1)/2} (-z)^k / (q;q)_k; ratio q^k (-z) / (1 - q^{k+1}).
  const double lq = std::log(q);
  const LogPolar lw = lp_from_complex(-z);
  const double aw = std::abs(z);
  auto next = [&](std::int64_t k, const LogPolar& t) {
    const double kd = static_cast<double>(k);
    return LogPolar::make(t.log_mag + kd * lq + lw.log_mag - std::log1p(-std::pow(q, kd + 1.0)),
                          t.phase + lw.phase);
  };
  auto sup = [&](std::int64_t k) {
    const double kd = static_cast<double>(k);
    return std::pow(q, kd) * aw / (1.0 - std::pow(q, kd + 1.0));
  };
  const Complex rhs =
      sum_series(LogPolar::one(), next, sup, options, "euler_product_series_check").to_complex();
  return {lhs, rhs};
}

Complex q_binomial_sum(Complex a, Complex z, double q, const SeriesOptions& options) {
  require_unit_nome(q, "q_binomial_sum");
  if (!(std::abs(z) < 1.0)) throw DomainError("q_binomial_sum: requires |z| < 1");
  const double aa = std::abs(a);
  const double az = std::abs(z);
  auto next = [&](std::int64_t k, const LogPolar& t) {
    const double qk = std::pow(q, static_cast<double>(k));
    const Complex ratio = (Complex{1.0, 0.0} - a * qk) * z / (1.0 - qk * q);
    return t * lp_from_complex(ratio);
  };
  auto sup = [&](std::int64_t k) {
    const double qk = std::pow(q, static_cast<double>(k));
    return (1.0 + aa * qk) * az / (1.0 - qk * q);
  };
  return sum_series(LogPolar::one(), next, sup, options, "q_binomial_sum").to_complex();
}

Complex ramanujan_a(double q, Complex z, const SeriesOptions& options) {
  return qsquare_series(q, -z, options, "ramanujan_a").to_complex();
}

Complex ramanujan_a_derivative(double q, Complex z, const SeriesOptions& options) {
  // d/dz (-z)^k = -k (-z)^{k-1}
  return -qsquare_derivative_series(q, -z, options, "ramanujan_a_derivative").to_complex();
}

Complex b_function(double q, Complex z, const SeriesOptions& options) {
  return qsquare_series(q, z, options, "b_function").to_complex();
}

Complex b_function_derivative(double q, Complex z, const SeriesOptions& options) {
  return qsquare_derivative_series(q, z, options, "b_function_derivative").to_complex();
}

LogPolar theta_lp(Complex z, double q, const SeriesOptions& options) {
  require_unit_nome(q, "theta");
  if (z == Complex{0.0, 0.0}) throw DomainError("theta: z must be nonzero");
  const double lq = std::log(q);
  const LogPolar lz = lp_from_complex(z);
  const double log_tol_half = std::log(0.5 * options.tol);

  const double log_eps = std::log(std::numeric_limits<double>::epsilon());
  double max_log = 0.0;
  std::vector<LogPolar> terms{LogPolar::one()};
  RescaledAccumulator running;
  running.add(terms.front());
  bool up_done = false, down_done = false;
  // Ratios q^{2n+1} |z|^{+-1} between consecutive terms decrease in n on both
  // sides, so each side's tail is geometric once its ratio is below one.
  for (std::int64_t n = 1;; ++n) {
    if (2 * n >= options.max_terms) {
      throw ConvergenceError("theta: tail test not met within max_terms");
    }
    const double nd = static_cast<double>(n);
    const LogPolar up = LogPolar::make(nd * nd * lq + nd * lz.log_mag, nd * lz.phase);
    const LogPolar down = LogPolar::make(nd * nd * lq - nd * lz.log_mag, -nd * lz.phase);
    terms.push_back(up);
    terms.push_back(down);
    running.add(up);
    running.add(down);
    max_log = std::max({max_log, up.log_mag, down.log_mag});
    const double sum_log = std::max(running.log_abs(), max_log + log_eps);
    const double r_up = (2.0 * nd + 1.0) * lq + lz.log_mag;
    const double r_down = (2.0 * nd + 1.0) * lq - lz.log_mag;
    auto tail_ok = [&](const LogPolar& t, double log_r) {
      if (log_r >= 0.0) return false;
      const double r = std::exp(log_r);
      return t.log_mag + log_r - std::log1p(-r) <= log_tol_half + sum_log;
    };
    up_done = tail_ok(up, r_up);
    down_done = tail_ok(down, r_down);
    if (up_done && down_done) break;
  }
  return sum_rescaled(terms).total();
}

Complex theta(Complex z, double q, const SeriesOptions& options) {
  return theta_lp(z, q, options).to_complex();
}

Remainder remainder_r1(double a, std::int64_t n, double q, const SeriesOptions& options) {
  require_unit_nome(q, "remainder_r1");
  if (!(a > 0.0)) throw DomainError("remainder_r1: requires a > 0");
  if (n < 0) throw DomainError("remainder_r1: requires n >= 0");
  const double aqn = a * std::pow(q, static_cast<double>(n));
  double value;
  if (aqn < 1.0) {
    value = std::expm1(LogPochhammerTable(aqn, q, 0, options).log_inf());
  } else {
    value = pochhammer_inf(aqn, q, options).real() - 1.0;
  }
  const double bound = pochhammer_inf(-a * q * q, q, options).real() * aqn / (1.0 - q);
  return {value, bound};
}

Remainder remainder_r2(double a, std::int64_t n, double q, const SeriesOptions& options) {
  require_unit_nome(q, "remainder_r2");
  if (!(a * q > 0.0 && a * q < 1.0)) throw DomainError("remainder_r2: requires 0 < a q < 1");
  if (n < 0) throw DomainError("remainder_r2: requires n >= 0");
  const double aqn = a * std::pow(q, static_cast<double>(n));
  if (!(aqn < 1.0)) throw DomainError("remainder_r2: (a q^n; q)_inf must not vanish");
  const double value = std::expm1(-LogPochhammerTable(aqn, q, 0, options).log_inf());
  const double bound = aqn / ((1.0 - q) * std::exp(LogPochhammerTable(a * q, q, 0, options).log_inf()));
  return {value, bound};
}

}  // namespace qpr
