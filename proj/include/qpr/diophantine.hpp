#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpr/declared_real.hpp"

namespace qpr {

struct FloorFrac {
  std::int64_t floor;
  double frac;  ///< in [0, 1)
};

/// x = floor + frac with floor the greatest integer <= x.
FloorFrac floor_frac(double x);

/// Principal character mod 2: 1 for odd n, 0 for even n.
int chi(std::int64_t n);

struct OrbitPoint {
  std::int64_t n;
  double frac;
  std::optional<Rational> exact;
};

/// {n theta} for n = 1..n_max.
std::vector<OrbitPoint> orbit(const DeclaredReal& theta, std::int64_t n_max);
std::vector<OrbitPoint> orbit(double theta, std::int64_t n_max);

struct Convergent {
  std::int64_t p;
  std::int64_t q;
};

/// Continued-fraction convergents p/q of theta. Rationals terminate at the
/// exact value; quadratic surds are expanded in exact integer arithmetic;
/// other irrationals stop once the double's precision is exhausted.
std::vector<Convergent> convergents(const DeclaredReal& theta, std::size_t count);
std::vector<Convergent> convergents(double theta, std::size_t count);

/// Certificate that n theta = m + target_beta + residual with |residual| below
/// the case's threshold.
///
/// For the two-angle cases the first component describes -tau n and the second
/// (m1, target_beta2, residual2) describes n theta.
struct DiophantineWitness {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::optional<std::int64_t> m1;
  double target_beta = 0.0;
  double residual = 0.0;
  std::optional<double> target_beta2;
  std::optional<double> residual2;
  double rho = 0.0;
  /// Residuals were computed in exact rational arithmetic.
  bool exact = false;
};

/// Scans n = 1..n_max for |n theta - beta - m| < n^{-rho}, m the nearest
/// integer. Without exact arithmetic a witness is only accepted when its
/// residual exceeds 1e3 * eps * n, the size of the rounding in n theta.
std::vector<DiophantineWitness> witness_search(const DeclaredReal& theta, const DeclaredReal& beta,
                                               double rho, std::int64_t n_max);
std::vector<DiophantineWitness> witness_search(double theta, double beta, double rho,
                                               std::int64_t n_max);

/// Witnesses for Chebyshev's inhomogeneous bound |n theta - beta - m| <= 3/n.
std::vector<DiophantineWitness> chebyshev_witnesses(const DeclaredReal& theta,
                                                    const DeclaredReal& beta, std::int64_t n_max);

/// Simultaneous acceptance of both angles at the same n.
std::vector<DiophantineWitness> joint_witness_search(const DeclaredReal& theta1,
                                                     const DeclaredReal& theta2,
                                                     const DeclaredReal& beta1,
                                                     const DeclaredReal& beta2, double rho,
                                                     std::int64_t n_max);

struct IrrationalFixture {
  std::string name;
  DeclaredReal value;
  /// Generalized irrationality measure omega(theta|0) when known.
  double declared_measure;
  /// Truncation depth K for the Liouville fixture.
  std::optional<int> liouville_depth;
  /// Exact decimal expansion where one exists (Liouville truncation).
  std::string decimal;
};

/// sqrt2, sqrt3, golden, and the Liouville constant truncated at K = 4.
std::vector<IrrationalFixture> fixture_irrationals();
const IrrationalFixture& fixture(std::string_view name);

/// Decimal expansion of sum_{k=1}^{depth} 10^{-k!}.
std::string liouville_decimal(int depth);

/// Parses "p/q", integers, fixture names ("sqrt2", "golden", ...), "sqrtN",
/// and a leading '-'. Free decimals require `assume`; otherwise this throws
/// std::invalid_argument.
DeclaredReal parse_declared_real(std::string_view text,
                                 std::optional<Arithmetic> assume = std::nullopt);

}  // namespace qpr
