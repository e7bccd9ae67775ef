#include "qpr/declared_real.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "qpr/error.hpp"
#include "qpr/numerics.hpp"

namespace qpr {
namespace {

std::int64_t floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

double QuadraticSurd::to_double() const {
  return (static_cast<double>(p) + std::sqrt(static_cast<double>(d))) / static_cast<double>(q);
}

DeclaredReal DeclaredReal::rational(std::int64_t num, std::int64_t den) {
  DeclaredReal r;
  r.exact_ = Rational::make(num, den);
  r.value_ = r.exact_->to_double();
  r.kind_ = Arithmetic::rational;
  r.label_ = r.exact_->den == 1 ? std::to_string(r.exact_->num)
                                : std::to_string(r.exact_->num) + "/" + std::to_string(r.exact_->den);
  return r;
}

DeclaredReal DeclaredReal::irrational(double value, std::string label,
                                      std::optional<QuadraticSurd> surd) {
  DeclaredReal r;
  r.value_ = value;
  r.kind_ = Arithmetic::irrational;
  r.exact_.reset();
  r.surd_ = surd;
  r.label_ = std::move(label);
  return r;
}

DeclaredReal DeclaredReal::surd(const QuadraticSurd& s, std::string label) {
  if (s.q == 0 || s.d <= 0) throw DomainError("QuadraticSurd: requires d > 0 and q != 0");
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(s.d))));
  if (root * root == s.d) throw DomainError("QuadraticSurd: d must not be a perfect square");
  return irrational(s.to_double(), std::move(label), s);
}

DeclaredReal DeclaredReal::assumed(double value, Arithmetic kind) {
  if (!std::isfinite(value)) throw DomainError("DeclaredReal: value must be finite");
  DeclaredReal r;
  r.value_ = value;
  r.kind_ = kind;
  r.exact_.reset();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  r.label_ = buf;
  return r;
}

DeclaredReal DeclaredReal::negated() const {
  DeclaredReal r = *this;
  r.value_ = -value_;
  if (exact_) r.exact_ = Rational{-exact_->num, exact_->den};
  if (surd_) r.surd_ = QuadraticSurd{surd_->p, surd_->d, -surd_->q};
  if (exact_) {
    r.label_ = DeclaredReal::rational(r.exact_->num, r.exact_->den).label_;
  } else if (!label_.empty() && label_.front() == '-') {
    r.label_ = label_.substr(1);
  } else {
    r.label_ = "-" + label_;
  }
  return r;
}

bool DeclaredReal::is_zero() const {
  return exact_ ? exact_->num == 0 : value_ == 0.0;
}

FracPart DeclaredReal::times(std::int64_t n) const {
  if (exact_) {
    const __int128 prod = static_cast<__int128>(n) * exact_->num;
    const std::int64_t fl = floor_div(prod, exact_->den);
    const auto rem =
        static_cast<std::int64_t>(prod - static_cast<__int128>(fl) * exact_->den);
    const Rational fr = Rational::make(rem, exact_->den);
    return {fl, fr.to_double(), fr};
  }
  const auto pf = floor_frac_product(n, value_);
  return {pf.floor, pf.frac, std::nullopt};
}

}  // namespace qpr
