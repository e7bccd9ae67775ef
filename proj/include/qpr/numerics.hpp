#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace qpr {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Reduces an angle into (-pi, pi].
double normalize_phase(double phase);

/// e^{i phase}, exact when the phase is a multiple of pi/2.
Complex unit_phasor(double phase);

/// A complex number held as (log |w|, arg w). Zero is log_mag == -inf.
///
/// Products, quotients and integer powers never overflow in this form, which
/// is what lets the degree-n sums carry factors such as q^{n^2 (1-s)}.
struct LogPolar {
  double log_mag = kNegInf;
  double phase = 0.0;

  static LogPolar zero() { return {}; }
  static LogPolar one() { return {0.0, 0.0}; }
  /// Builds a value from raw components, normalizing the phase.
  static LogPolar make(double log_mag, double phase);

  bool is_zero() const { return log_mag == kNegInf; }
  /// Converts to an ordinary complex; overflows to inf/0 outside double range.
  Complex to_complex() const;
  double log10_mag() const;
  double phase_degrees() const;
};

LogPolar lp_from_complex(Complex w);
LogPolar lp_from_real(double x);

LogPolar operator*(const LogPolar& a, const LogPolar& b);
LogPolar operator/(const LogPolar& a, const LogPolar& b);
LogPolar lp_inverse(const LogPolar& b);
LogPolar lp_conj(const LogPolar& b);
/// b^k for integer k. Throws DomainError for a zero base with k < 0.
LogPolar lp_pow_int(const LogPolar& b, std::int64_t k);
/// Sum of two log-polar values without leaving log space for the larger one.
LogPolar lp_add(const LogPolar& a, const LogPolar& b);

/// Result of `sum_rescaled`. The represented sum is value * exp(rescale_log).
struct SummationResult {
  Complex value{0.0, 0.0};
  double rescale_log = 0.0;
  std::size_t term_count = 0;
  double max_term_log = kNegInf;

  LogPolar total() const;
};

/// Sums log-polar terms without overflow.
///
/// The largest log-magnitude is factored out, the scaled terms are visited in
/// descending magnitude (ties by input index) and accumulated with an
/// error-free TwoSum on each component. The result is deterministic for a
/// fixed input sequence.
SummationResult sum_rescaled(std::span<const LogPolar> terms);

/// Running compensated sum over log-polar terms with on-the-fly rescaling.
///
/// Used for tail tests while a series is being generated; the final value of a
/// series is always produced by `sum_rescaled` so ordering stays canonical.
class RescaledAccumulator {
 public:
  void add(const LogPolar& term);
  /// log |partial sum|; -inf when the partial sum is zero.
  double log_abs() const;
  LogPolar value() const;

 private:
  double scale_ = kNegInf;
  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

/// Error-free transformation a + b = s + e.
struct TwoSum {
  double sum;
  double err;
};
TwoSum two_sum(double a, double b);

/// Integer and fractional part of n * x computed from the exact product, so
/// the fractional part is accurate even when n * x is large.
struct ProductFloorFrac {
  std::int64_t floor;
  double frac;  // in [0, 1)
};
ProductFloorFrac floor_frac_product(std::int64_t n, double x);

}  // namespace qpr
