#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qpr {

/// Reduced fraction num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// (p + sqrt(d)) / q with d > 0 not a perfect square and q != 0.
struct QuadraticSurd {
  std::int64_t p = 0;
  std::int64_t d = 2;
  std::int64_t q = 1;

  double to_double() const;
};

enum class Arithmetic { rational, irrational };

/// Integer and fractional part of n * x. `exact` is set when x is a declared
/// rational, in which case `frac` is the correctly rounded value of it.
struct FracPart {
  std::int64_t floor = 0;
  double frac = 0.0;
  std::optional<Rational> exact;
};

/// A real parameter whose arithmetic nature is declared, never inferred.
///
/// Case selection depends on whether tau and theta are rational, which a
/// double cannot reveal. Rationals carry their exact fraction; irrationals
/// carry a double plus, when available, an exact quadratic-surd descriptor.
class DeclaredReal {
 public:
  DeclaredReal() = default;

  static DeclaredReal rational(std::int64_t num, std::int64_t den = 1);
  static DeclaredReal irrational(double value, std::string label,
                                 std::optional<QuadraticSurd> surd = std::nullopt);
  static DeclaredReal surd(const QuadraticSurd& s, std::string label);
  /// A free decimal whose nature the caller asserts.
  static DeclaredReal assumed(double value, Arithmetic kind);

  double value() const { return value_; }
  Arithmetic kind() const { return kind_; }
  bool is_rational() const { return kind_ == Arithmetic::rational; }
  const std::optional<Rational>& exact() const { return exact_; }
  const std::optional<QuadraticSurd>& quadratic_surd() const { return surd_; }
  const std::string& label() const { return label_; }

  DeclaredReal negated() const;
  bool is_zero() const;
  /// Decomposes n * value into floor and fractional part; exact for rationals.
  FracPart times(std::int64_t n) const;

 private:
  double value_ = 0.0;
  Arithmetic kind_ = Arithmetic::rational;
  std::optional<Rational> exact_ = Rational{};
  std::optional<QuadraticSurd> surd_;
  std::string label_ = "0";
};

}  // namespace qpr
