#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "qpr/declared_real.hpp"
#include "qpr/numerics.hpp"
#include "qpr/qseries.hpp"

namespace qpr {

/// s = tau + 2 + i 2 theta pi / log q.
struct ScalingParameter {
  DeclaredReal tau;
  DeclaredReal theta;

  double sigma() const { return tau.value() + 2.0; }
  double t(double q) const { return 2.0 * theta.value() * kPi / std::log(q); }
  Complex s(double q) const { return {sigma(), t(q)}; }
};

/// x_n(z, s) = z q^{-ns}. The phase is reduced through {n theta}, so it is
/// exact for rational theta.
LogPolar scale_point(const QContext& ctx, const ScalingParameter& sp, std::int64_t n);

/// L_n^{(alpha)}(x; q) summed in log-polar form.
LogPolar laguerre_direct_lp(const QContext& ctx, std::int64_t n, const LogPolar& x);
/// Same as laguerre_direct_lp, returned as an ordinary complex. Throws
/// RangeError when a term would exceed exp(700).
Complex laguerre_direct(const QContext& ctx, std::int64_t n, Complex x);

/// (-z q^alpha)^n q^{n^2 (1 - s)}, the divisor of the reversed sum.
LogPolar laguerre_normalizer(const QContext& ctx, const ScalingParameter& sp, std::int64_t n);

/// L_n(x_n(z,s)) / ((-z q^alpha)^n q^{n^2 (1-s)}) by the reversed sum.
/// Refuses tau < 0, where the terms grow like q^{tau n k} and the split path
/// must be used instead.
LogPolar normalized_laguerre(const QContext& ctx, const ScalingParameter& sp, std::int64_t n);

namespace detail {
/// normalized_laguerre without the tau >= 0 check, for cross-checks at small n.
LogPolar normalized_laguerre_unchecked(const QContext& ctx, const ScalingParameter& sp,
                                       std::int64_t n);
}  // namespace detail

/// Split of the reversed sum at k = floor(m/2), both halves scaled by
/// (q;q)_inf^2 (-z q^alpha e^{-2 pi i n theta})^h / q^{h (tau n + h)}.
///
/// s1 = sum_{k=0}^{h} q^{k^2} w^k e(k,n) and s2 = sum_{k=1}^{n-h} q^{k^2} w^{-k} f(k,n)
/// with w = -z q^alpha q^{chi(m) + c_n} e^{-2 pi i d_n}.
struct SplitSumResult {
  LogPolar s1;
  LogPolar s2;
  LogPolar total;
  std::int64_t m = 0;
  std::int64_t floor_m_half = 0;
  /// -tau n - m. In [0, 1) unless m was supplied explicitly.
  double c_n = 0.0;
  double d_n = 0.0;
  std::int64_t m1 = 0;
  /// L_n(x_n(z,s)) = normalizer * total.
  LogPolar normalizer;
};

/// Requires -2 < tau < 0 and n >= 1. `m` overrides floor(-tau n), which lets a
/// Diophantine witness choose the integer nearest to -tau n.
SplitSumResult split_sums(const QContext& ctx, const ScalingParameter& sp, std::int64_t n,
                          std::optional<std::int64_t> m = std::nullopt);

/// e(k,n) for 0 <= k <= floor(m/2).
double factor_e(const QContext& ctx, std::int64_t k, std::int64_t n, std::int64_t m);
/// f(k,n) for 1 <= k <= n - floor(m/2).
double factor_f(const QContext& ctx, std::int64_t k, std::int64_t n, std::int64_t m);

}  // namespace qpr
