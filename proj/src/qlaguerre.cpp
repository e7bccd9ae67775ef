#include "qpr/qlaguerre.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qpr/diophantine.hpp"
#include "qpr/error.hpp"

namespace qpr {
namespace {

struct Tables {
  LogPochhammerTable qq;  // (q;q)_j
  LogPochhammerTable qa;  // (q^{alpha+1};q)_j
};

Tables make_tables(const QContext& ctx, std::int64_t n) {
  const double qa = std::exp((ctx.alpha() + 1.0) * ctx.log_q());
  return {LogPochhammerTable(ctx.q(), ctx.q(), n, ctx.options()),
          LogPochhammerTable(qa, ctx.q(), n, ctx.options())};
}

double log_abs_z(const QContext& ctx) { return std::log(std::abs(ctx.z())); }

// -z q^alpha in log-polar form.
LogPolar minus_z_qalpha(const QContext& ctx) {
  return LogPolar::make(log_abs_z(ctx) + ctx.alpha() * ctx.log_q(), std::arg(ctx.z()) + kPi);
}

void require_n(std::int64_t n, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": n must be >= 0");
}

LogPolar reversed_sum(const QContext& ctx, const ScalingParameter& sp, std::int64_t n) {
  require_n(n, "normalized_laguerre");
  if (n == 0) return LogPolar::one();
  const Tables t = make_tables(ctx, n);
  const double lq = ctx.log_q();
  const double d = sp.theta.times(n).frac;
  // -q^{tau n} e^{2 pi i n theta} / (z q^alpha)
  const LogPolar base = LogPolar::make(sp.tau.value() * static_cast<double>(n) * lq -
                                           log_abs_z(ctx) - ctx.alpha() * lq,
                                       kTwoPi * d + kPi - std::arg(ctx.z()));
  std::vector<LogPolar> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double coef = t.qa[n] - t.qq[k] - t.qq[n - k] - t.qa[n - k] + kd * kd * lq;
    terms.push_back(LogPolar::make(coef, 0.0) * lp_pow_int(base, k));
  }
  return sum_rescaled(terms).total();
}

}  // namespace

LogPolar scale_point(const QContext& ctx, const ScalingParameter& sp, std::int64_t n) {
  require_n(n, "scale_point");
  const double d = sp.theta.times(n).frac;
  return LogPolar::make(log_abs_z(ctx) - static_cast<double>(n) * sp.sigma() * ctx.log_q(),
                        std::arg(ctx.z()) - kTwoPi * d);
}

LogPolar laguerre_direct_lp(const QContext& ctx, std::int64_t n, const LogPolar& x) {
  require_n(n, "laguerre_direct");
  if (n == 0) return LogPolar::one();
  const Tables t = make_tables(ctx, n);
  const double lq = ctx.log_q();
  const LogPolar minus_x = LogPolar::make(x.log_mag, x.phase + kPi);
  std::vector<LogPolar> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double coef =
        t.qa[n] - t.qq[k] - t.qq[n - k] - t.qa[k] + (kd * kd + ctx.alpha() * kd) * lq;
    terms.push_back(LogPolar::make(coef, 0.0) * lp_pow_int(minus_x, k));
  }
  return sum_rescaled(terms).total();
}

Complex laguerre_direct(const QContext& ctx, std::int64_t n, Complex x) {
  require_n(n, "laguerre_direct");
  if (n == 0) return {1.0, 0.0};
  // Largest term, estimated from the same coefficients the sum uses.
  const Tables t = make_tables(ctx, n);
  const double lx = std::log(std::abs(x));
  double top = kNegInf;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double c = t.qa[n] - t.qq[k] - t.qq[n - k] - t.qa[k] +
                     (kd * kd + ctx.alpha() * kd) * ctx.log_q() + (k > 0 ? kd * lx : 0.0);
    top = std::max(top, c);
  }
  if (top >= 700.0) {
    throw RangeError("laguerre_direct: terms exceed double range; use normalized_laguerre or split_sums");
  }
  // Every term fits in a double, so sum linearly in extended precision. A
  // log-polar term carries about |log t| * eps of relative error, which the
  // cancellation in this alternating sum would amplify.
  using LD = long double;
  const LD lq = std::log(static_cast<LD>(ctx.q()));
  const LD qa = std::exp(static_cast<LD>(ctx.alpha()) * lq);
  auto one_minus_qpow = [lq](LD m) { return -std::expm1(m * lq); };  // 1 - q^m
  const std::complex<LD> mx(-static_cast<LD>(x.real()), -static_cast<LD>(x.imag()));
  LD coef = 1.0L, prefactor = 1.0L, q_odd = std::exp(lq) * qa;  // q^{2k+1} q^alpha
  std::complex<LD> power(1.0L, 0.0L), sum(1.0L, 0.0L);
  const LD alpha = static_cast<LD>(ctx.alpha());
  for (std::int64_t k = 0; k < n; ++k) {
    const LD k1 = static_cast<LD>(k + 1);
    coef *= q_odd * one_minus_qpow(static_cast<LD>(n - k)) /
            (one_minus_qpow(k1) * one_minus_qpow(alpha + k1));
    q_odd *= std::exp(2.0L * lq);
    power *= mx;
    sum += coef * power;
    prefactor *= one_minus_qpow(alpha + k1) / one_minus_qpow(k1);
  }
  const std::complex<LD> out = prefactor * sum;
  return {static_cast<double>(out.real()), static_cast<double>(out.imag())};
}

LogPolar laguerre_normalizer(const QContext& ctx, const ScalingParameter& sp, std::int64_t n) {
  require_n(n, "laguerre_normalizer");
  const double nd = static_cast<double>(n);
  const double n2_frac = sp.theta.times(n * n).frac;
  // q^{n^2 (1 - s)} = q^{-n^2 (1 + tau)} e^{-2 pi i n^2 theta}
  const LogPolar q_part =
      LogPolar::make(-nd * nd * (1.0 + sp.tau.value()) * ctx.log_q(), -kTwoPi * n2_frac);
  return lp_pow_int(minus_z_qalpha(ctx), n) * q_part;
}

LogPolar normalized_laguerre(const QContext& ctx, const ScalingParameter& sp, std::int64_t n) {
  if (sp.tau.value() < 0.0) {
    throw DomainError("normalized_laguerre: tau < 0 requires split_sums");
  }
  return reversed_sum(ctx, sp, n);
}

namespace detail {
LogPolar normalized_laguerre_unchecked(const QContext& ctx, const ScalingParameter& sp,
                                       std::int64_t n) {
  return reversed_sum(ctx, sp, n);
}
}  // namespace detail

SplitSumResult split_sums(const QContext& ctx, const ScalingParameter& sp, std::int64_t n,
                          std::optional<std::int64_t> m_override) {
  const double tau = sp.tau.value();
  if (!(tau > -2.0 && tau < 0.0)) throw DomainError("split_sums: requires -2 < tau < 0");
  if (n < 1) throw DomainError("split_sums: requires n >= 1");

  SplitSumResult r;
  const FracPart neg_tau_n = sp.tau.negated().times(n);
  r.m = m_override.value_or(neg_tau_n.floor);
  if (r.m < 0 || r.m > 2 * n) throw DomainError("split_sums: m must lie in [0, 2n]");
  r.c_n = static_cast<double>(neg_tau_n.floor - r.m) + neg_tau_n.frac;
  const FracPart n_theta = sp.theta.times(n);
  r.d_n = n_theta.frac;
  r.m1 = n_theta.floor;
  const std::int64_t h = r.m / 2;
  r.floor_m_half = h;

  const Tables t = make_tables(ctx, n);
  const double lq = ctx.log_q();
  const double two_inf = 2.0 * t.qq.log_inf();
  const LogPolar w = LogPolar::make(
      log_abs_z(ctx) + (ctx.alpha() + chi(r.m) + r.c_n) * lq,
      std::arg(ctx.z()) + kPi - kTwoPi * r.d_n);

  std::vector<LogPolar> first, second;
  first.reserve(static_cast<std::size_t>(h) + 1);
  second.reserve(static_cast<std::size_t>(n - h));
  for (std::int64_t k = 0; k <= h; ++k) {
    const double kd = static_cast<double>(k);
    const double log_e = two_inf + t.qa[n] - t.qq[h - k] - t.qq[n - h + k] - t.qa[n - h + k];
    first.push_back(LogPolar::make(kd * kd * lq + log_e, 0.0) * lp_pow_int(w, k));
  }
  for (std::int64_t k = 1; k <= n - h; ++k) {
    const double kd = static_cast<double>(k);
    const double log_f = two_inf + t.qa[n] - t.qq[h + k] - t.qq[n - h - k] - t.qa[n - h - k];
    second.push_back(LogPolar::make(kd * kd * lq + log_f, 0.0) * lp_pow_int(w, -k));
  }
  r.s1 = sum_rescaled(first).total();
  r.s2 = sum_rescaled(second).total();
  std::vector<LogPolar> all = first;
  all.insert(all.end(), second.begin(), second.end());
  r.total = sum_rescaled(all).total();

  const double hd = static_cast<double>(h);
  const LogPolar shift = LogPolar::make(hd * (tau * static_cast<double>(n) + hd) * lq - two_inf, 0.0);
  const LogPolar rotated = LogPolar::make(log_abs_z(ctx) + ctx.alpha() * lq,
                                          std::arg(ctx.z()) + kPi - kTwoPi * r.d_n);
  r.normalizer = laguerre_normalizer(ctx, sp, n) * shift / lp_pow_int(rotated, h);
  return r;
}

double factor_e(const QContext& ctx, std::int64_t k, std::int64_t n, std::int64_t m) {
  if (m < 0 || m > 2 * n) throw DomainError("factor_e: m must lie in [0, 2n]");
  const std::int64_t h = m / 2;
  if (k < 0 || k > h) throw DomainError("factor_e: requires 0 <= k <= floor(m/2)");
  const Tables t = make_tables(ctx, n);
  return std::exp(2.0 * t.qq.log_inf() + t.qa[n] - t.qq[h - k] - t.qq[n - h + k] -
                  t.qa[n - h + k]);
}

double factor_f(const QContext& ctx, std::int64_t k, std::int64_t n, std::int64_t m) {
  if (m < 0 || m > 2 * n) throw DomainError("factor_f: m must lie in [0, 2n]");
  const std::int64_t h = m / 2;
  if (k < 1 || k > n - h) throw DomainError("factor_f: requires 1 <= k <= n - floor(m/2)");
  const Tables t = make_tables(ctx, n);
  return std::exp(2.0 * t.qq.log_inf() + t.qa[n] - t.qq[h + k] - t.qq[n - h - k] -
                  t.qa[n - h - k]);
}

}  // namespace qpr
