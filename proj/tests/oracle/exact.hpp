#pragma once
// Exact rational reference values for the tests. Everything here is computed
// with arbitrary-precision rationals and converted to double only at the end.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

inline double to_double(const Q& x) { return x.convert_to<double>(); }

inline Q pow(const Q& b, std::int64_t k) {
  Q r = 1;
  const std::int64_t a = k < 0 ? -k : k;
  for (std::int64_t i = 0; i < a; ++i) r *= b;
  return k < 0 ? Q(1) / r : r;
}

/// Gaussian rational re + i im.
struct C {
  Q re = 0;
  Q im = 0;

  C() = default;
  C(Q r) : re(std::move(r)) {}
  C(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}

  friend C operator+(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
  friend C operator-(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
  friend C operator-(const C& a) { return {-a.re, -a.im}; }
  friend C operator*(const C& a, const C& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend C operator/(const C& a, const C& b) {
    const Q d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const C& a, const C& b) { return a.re == b.re && a.im == b.im; }
  C conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

inline C pow(const C& b, std::int64_t k) {
  C r(Q(1));
  const std::int64_t a = k < 0 ? -k : k;
  for (std::int64_t i = 0; i < a; ++i) r = r * b;
  return k < 0 ? C(Q(1)) / r : r;
}

/// i^k
inline C i_pow(std::int64_t k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

/// (a;q)_n
inline Q poch(const Q& a, const Q& q, std::int64_t n) {
  Q r = 1, qk = 1;
  for (std::int64_t k = 0; k < n; ++k) {
    r *= 1 - a * qk;
    qk *= q;
  }
  return r;
}

inline Q qbinom(std::int64_t n, std::int64_t k, const Q& q) {
  return poch(q, q, n) / (poch(q, q, k) * poch(q, q, n - k));
}

/// sum_{k=0}^{K-1} q^{k^2} x^k / (q;q)_k
inline Q b_partial(const Q& q, const Q& x, int terms) {
  Q s = 0;
  for (int k = 0; k < terms; ++k) s += pow(q, k * k) * pow(x, k) / poch(q, q, k);
  return s;
}

/// sum_{|k| < K} q^{k^2} x^k
inline Q theta_partial(const Q& q, const Q& x, int terms) {
  Q s = 1;
  for (int k = 1; k < terms; ++k) s += pow(q, k * k) * (pow(x, k) + pow(x, -k));
  return s;
}

/// Exact data for a q-Laguerre evaluation with q = r^2, so that every power
/// q^{j/2} with integer j is rational.
struct Setup {
  Q r;                  // q = r^2
  std::int64_t alpha2;  // alpha = alpha2 / 2
  C z;

  Q q() const { return r * r; }
  Q qa() const { return pow(r, alpha2); }  // q^alpha
};

/// L_n^{(alpha)}(x; q) term by term.
inline C laguerre_direct(const Setup& s, std::int64_t n, const C& x) {
  const Q q = s.q(), qa1 = s.qa() * q;
  C sum;
  for (std::int64_t k = 0; k <= n; ++k) {
    const Q c = pow(q, k * k) * pow(s.qa(), k) * qbinom(n, k, q) / poch(qa1, q, k);
    sum = sum + C(c) * pow(-x, k);
  }
  return C(poch(qa1, q, n) / poch(q, q, n)) * sum;
}

/// Scaling with tau = tau2 / 2 and theta = theta4 / 4.
struct Scaling {
  std::int64_t tau2;
  std::int64_t theta4;
};

/// x_n(z, s) = z q^{-n(tau+2)} e^{-2 pi i n theta}
inline C scale_point(const Setup& s, const Scaling& sc, std::int64_t n) {
  return s.z * C(pow(s.r, -n * (sc.tau2 + 4))) * i_pow(-n * sc.theta4);
}

/// (-z q^alpha)^n q^{n^2 (1-s)}
inline C normalizer(const Setup& s, const Scaling& sc, std::int64_t n) {
  return pow(-s.z * C(s.qa()), n) * C(pow(s.r, -n * n * (2 + sc.tau2))) *
         i_pow(-n * n * sc.theta4);
}

/// The reversed sum evaluated as written.
inline C reversed_sum(const Setup& s, const Scaling& sc, std::int64_t n) {
  const Q q = s.q(), qa1 = s.qa() * q;
  const C e_n = i_pow(n * sc.theta4);
  const C base = -C(pow(s.r, sc.tau2 * n)) / (s.z * C(s.qa()));
  C sum;
  for (std::int64_t k = 0; k <= n; ++k) {
    const Q c = qbinom(n, k, q) * pow(q, k * k) / poch(qa1, q, n - k);
    sum = sum + C(c) * pow(e_n, k) * pow(base, k);
  }
  return C(poch(qa1, q, n) / poch(q, q, n)) * sum;
}

/// Both halves of the split at floor(m/2), with (q;q)_inf^2 divided out of
/// e(k,n) and f(k,n). `lhs` is the reversed sum carried to the same scale.
struct Split {
  C s1, s2, lhs;
};

inline Split split(const Setup& s, const Scaling& sc, std::int64_t n) {
  const Q q = s.q(), qa1 = s.qa() * q;
  const std::int64_t neg_tau2_n = -sc.tau2 * n;          // 2(-tau n)
  const std::int64_t m = neg_tau2_n >= 0 ? neg_tau2_n / 2 : -((-neg_tau2_n + 1) / 2);
  const std::int64_t c2 = neg_tau2_n - 2 * m;            // 2 c_n in {0, 1}
  const std::int64_t h = m / 2, chi = m % 2;
  const C e_n = i_pow(n * sc.theta4);
  const C w = -s.z * C(s.qa() * pow(q, chi) * pow(s.r, c2)) * e_n.conj();
  Split out;
  for (std::int64_t k = 0; k <= h; ++k) {
    const Q e = poch(qa1, q, n) / (poch(q, q, h - k) * poch(q, q, n - h + k) * poch(qa1, q, n - h + k));
    out.s1 = out.s1 + C(pow(q, k * k) * e) * pow(w, k);
  }
  for (std::int64_t k = 1; k <= n - h; ++k) {
    const Q f = poch(qa1, q, n) / (poch(q, q, h + k) * poch(q, q, n - h - k) * poch(qa1, q, n - h - k));
    out.s2 = out.s2 + C(pow(q, k * k) * f) * pow(w, -k);
  }
  // q^{h (tau n + h)} with tau n = -(m + c_n)
  const C shift = C(pow(s.r, 2 * h * h - h * neg_tau2_n));
  out.lhs = reversed_sum(s, sc, n) * pow(-s.z * C(s.qa()) * e_n.conj(), h) / shift;
  return out;
}

}  // namespace oracle
