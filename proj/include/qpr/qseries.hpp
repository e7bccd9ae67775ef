#pragma once

#include <cstdint>
#include <vector>

#include "qpr/numerics.hpp"

namespace qpr {

/// Truncation controls shared by every infinite product and series.
struct SeriesOptions {
  /// Relative tolerance the certified tail bound must reach.
  double tol = 1e-15;
  /// Hard cap on generated terms; exceeding it raises ConvergenceError.
  std::int64_t max_terms = 10000;
};

/// Fixed problem data: nome q in (0,1), order alpha > -1, nonzero base point z.
class QContext {
 public:
  QContext(double q, double alpha, Complex z, SeriesOptions options = {});

  double q() const { return q_; }
  double alpha() const { return alpha_; }
  Complex z() const { return z_; }
  double log_q() const { return log_q_; }
  const SeriesOptions& options() const { return options_; }

 private:
  double q_;
  double alpha_;
  Complex z_;
  double log_q_;
  SeriesOptions options_;
};

/// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k); n < 0 is a DomainError.
Complex pochhammer(Complex a, double q, std::int64_t n);

/// (a;q)_inf for |q| < 1, truncated once exp(|a||q|^K/(1-|q|)) - 1 <= tol,
/// which bounds the relative contribution of every remaining factor.
Complex pochhammer_inf(Complex a, double q, const SeriesOptions& options = {});

/// Gaussian binomial [n k]_q; requires 0 <= k <= n.
double q_binomial(std::int64_t n, std::int64_t k, double q);

/// log (a;q)_j for j = 0..n and the limit j -> inf, for real 0 <= a < 1 and
/// 0 < q < 1. All factors are positive so logs are well defined.
class LogPochhammerTable {
 public:
  LogPochhammerTable(double a, double q, std::int64_t n, const SeriesOptions& options = {});

  double operator[](std::int64_t j) const { return prefix_[static_cast<std::size_t>(j)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(prefix_.size()) - 1; }
  double log_inf() const { return log_inf_; }

 private:
  std::vector<double> prefix_;
  double log_inf_;
};

/// The two routes to (z;q)_inf: product form and the q-exponential series.
struct CrossCheck {
  Complex lhs;  ///< product
  Complex rhs;  ///< series
};
CrossCheck euler_product_series_check(Complex z, double q, const SeriesOptions& options = {});

/// Sum_{k>=0} (a;q)_k z^k / (q;q)_k for |z| < 1 (the q-binomial series).
Complex q_binomial_sum(Complex a, Complex z, double q, const SeriesOptions& options = {});

/// Ramanujan's entire function A_q(z) = sum q^{k^2} (-z)^k / (q;q)_k.
Complex ramanujan_a(double q, Complex z, const SeriesOptions& options = {});
/// Termwise derivative of A_q.
Complex ramanujan_a_derivative(double q, Complex z, const SeriesOptions& options = {});
/// B_q(z) = sum q^{k^2} z^k / (q;q)_k, so A_q(-z) = B_q(z).
Complex b_function(double q, Complex z, const SeriesOptions& options = {});
Complex b_function_derivative(double q, Complex z, const SeriesOptions& options = {});

/// Bilateral theta series sum_{n in Z} q^{n^2} z^n in log-polar form, for
/// 0 < q < 1 and z != 0.
LogPolar theta_lp(Complex z, double q, const SeriesOptions& options = {});
Complex theta(Complex z, double q, const SeriesOptions& options = {});

/// A perturbation value together with the majorant it must respect.
struct Remainder {
  double value;
  double bound;
};

/// value = (a q^n; q)_inf - 1, bound = (-a q^2; q)_inf a q^n / (1 - q); a > 0.
Remainder remainder_r1(double a, std::int64_t n, double q, const SeriesOptions& options = {});
/// value = 1/(a q^n; q)_inf - 1, bound = a q^n / ((1 - q)(a q; q)_inf); 0 < a q < 1.
Remainder remainder_r2(double a, std::int64_t n, double q, const SeriesOptions& options = {});

}  // namespace qpr
