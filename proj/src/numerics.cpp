#include "qpr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qpr/error.hpp"

namespace qpr {

double normalize_phase(double phase) {
  if (!std::isfinite(phase)) return 0.0;
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

LogPolar LogPolar::make(double log_mag, double phase) {
  if (log_mag == kNegInf) return zero();
  return {log_mag, normalize_phase(phase)};
}

Complex unit_phasor(double phase) {
  // Exact on the axes, so real values stay real through log-polar form.
  if (phase == 0.0) return {1.0, 0.0};
  if (phase == kPi || phase == -kPi) return {-1.0, 0.0};
  if (phase == 0.5 * kPi) return {0.0, 1.0};
  if (phase == -0.5 * kPi) return {0.0, -1.0};
  return {std::cos(phase), std::sin(phase)};
}

Complex LogPolar::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::exp(log_mag) * unit_phasor(phase);
}

double LogPolar::log10_mag() const { return log_mag / std::log(10.0); }

double LogPolar::phase_degrees() const { return phase * 180.0 / kPi; }

LogPolar lp_from_complex(Complex w) {
  if (w == Complex{0.0, 0.0}) return LogPolar::zero();
  // std::abs goes through hypot and stays finite for huge components.
  return LogPolar::make(std::log(std::abs(w)), std::arg(w));
}

LogPolar lp_from_real(double x) { return lp_from_complex({x, 0.0}); }

LogPolar operator*(const LogPolar& a, const LogPolar& b) {
  if (a.is_zero() || b.is_zero()) return LogPolar::zero();
  return LogPolar::make(a.log_mag + b.log_mag, a.phase + b.phase);
}

LogPolar lp_inverse(const LogPolar& b) {
  if (b.is_zero()) throw DomainError("lp_inverse: zero has no inverse");
  return LogPolar::make(-b.log_mag, -b.phase);
}

LogPolar operator/(const LogPolar& a, const LogPolar& b) {
  return a * lp_inverse(b);
}

LogPolar lp_conj(const LogPolar& b) { return LogPolar::make(b.log_mag, -b.phase); }

LogPolar lp_pow_int(const LogPolar& b, std::int64_t k) {
  if (k == 0) return LogPolar::one();
  if (b.is_zero()) {
    if (k < 0) throw DomainError("lp_pow_int: zero base with negative exponent");
    return LogPolar::zero();
  }
  const double kd = static_cast<double>(k);
  // k * phase reduced without forming a huge multiple of pi first.
  const double turns = b.phase / kTwoPi;
  return LogPolar::make(kd * b.log_mag, kTwoPi * floor_frac_product(k, turns).frac);
}

LogPolar lp_add(const LogPolar& a, const LogPolar& b) {
  const LogPolar terms[2] = {a, b};
  return sum_rescaled(terms).total();
}

LogPolar SummationResult::total() const {
  if (value == Complex{0.0, 0.0}) return LogPolar::zero();
  LogPolar v = lp_from_complex(value);
  v.log_mag += rescale_log;
  return v;
}

TwoSum two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

SummationResult sum_rescaled(std::span<const LogPolar> terms) {
  SummationResult out;
  out.term_count = terms.size();
  if (terms.empty()) return out;

  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return terms[i].log_mag > terms[j].log_mag;
  });

  const double top = terms[order.front()].log_mag;
  out.max_term_log = top;
  if (top == kNegInf) return out;
  out.rescale_log = top;

  double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
  for (std::size_t idx : order) {
    const LogPolar& t = terms[idx];
    if (t.is_zero()) break;
    const double mag = std::exp(t.log_mag - top);
    const Complex u = unit_phasor(t.phase);
    const auto [r, rc] = two_sum(re, mag * u.real());
    const auto [i, ic] = two_sum(im, mag * u.imag());
    re = r;
    re_c += rc;
    im = i;
    im_c += ic;
  }
  out.value = {re + re_c, im + im_c};
  return out;
}

void RescaledAccumulator::add(const LogPolar& term) {
  if (term.is_zero()) return;
  if (term.log_mag > scale_) {
    const double f = scale_ == kNegInf ? 0.0 : std::exp(scale_ - term.log_mag);
    re_ *= f;
    re_c_ *= f;
    im_ *= f;
    im_c_ *= f;
    scale_ = term.log_mag;
  }
  const double mag = std::exp(term.log_mag - scale_);
  const Complex u = unit_phasor(term.phase);
  const auto [r, rc] = two_sum(re_, mag * u.real());
  const auto [i, ic] = two_sum(im_, mag * u.imag());
  re_ = r;
  re_c_ += rc;
  im_ = i;
  im_c_ += ic;
}

LogPolar RescaledAccumulator::value() const {
  if (scale_ == kNegInf) return LogPolar::zero();
  const Complex v{re_ + re_c_, im_ + im_c_};
  if (v == Complex{0.0, 0.0}) return LogPolar::zero();
  LogPolar out = lp_from_complex(v);
  out.log_mag += scale_;
  return out;
}

double RescaledAccumulator::log_abs() const { return value().log_mag; }

ProductFloorFrac floor_frac_product(std::int64_t n, double x) {
  const double nd = static_cast<double>(n);
  const double hi = nd * x;
  const double lo = std::fma(nd, x, -hi);
  const double fl = std::floor(hi);
  // hi - fl is exact for |hi| < 2^52; lo carries the rounding of the product.
  double frac = (hi - fl) + lo;
  auto ifl = static_cast<std::int64_t>(fl);
  if (frac < 0.0) {
    // True product sits just below an integer: keep the greatest-integer floor.
    frac += 1.0;
    --ifl;
    if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);
  } else if (frac >= 1.0) {
    frac -= 1.0;
    ++ifl;
  }
  return {ifl, frac};
}

}  // namespace qpr
