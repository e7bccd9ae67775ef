#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpr/diophantine.hpp"
#include "qpr/qlaguerre.hpp"

namespace qpr {

/// One evaluation of a regime at degree n.
///
/// `exact` and `main` share the regime's normalization: L_n (q;q)_inf over the
/// reversed-sum divisor for cases 1-3, and the theta normalization of the
/// split sums for cases 4-7.
struct RegimeReport {
  int case_id = 0;
  std::int64_t n = 0;
  LogPolar exact;
  Complex main{0.0, 0.0};
  double observed_error = 0.0;
  double bound = 0.0;
  bool eligible = false;
  std::string eligibility_notes;
  std::optional<DiophantineWitness> witness;
  std::int64_t nu = 0;
  std::map<std::string, std::string> metadata;

  /// observed_error <= bound, or the row is not eligible.
  bool satisfied() const { return !eligible || observed_error <= bound; }
};

/// Cutoff nu_n. Cases 3, 5, 6, 7: floor(q^4 log^2 n / (1 + log(1/q))).
/// Case 4: min(floor((2+tau) n / 8), floor(-tau n / 8)).
std::int64_t nu_n(int case_id, std::int64_t n, double tau, double q);

/// Case of the theorem selected by the declared arithmetic of tau and theta.
/// Throws DomainError for tau <= -2.
int classify_case(const ScalingParameter& sp);

/// Message for tau <= -2, where the scaling falls outside the theorem.
std::optional<std::string> theorem_remark_check(double tau);

/// tau > 0: main term 1.
RegimeReport eval_case1(const QContext& ctx, const ScalingParameter& sp, std::int64_t n);

/// tau = 0: main term A_q(e^{2 pi i beta} / (z q^alpha)). Case 2 needs a
/// witness with zero residual, case 3 one with |residual| < n^{-rho}.
RegimeReport eval_case_aq(const QContext& ctx, const ScalingParameter& sp, std::int64_t n,
                          const DiophantineWitness& witness, int case_id);

/// -2 < tau < 0: main term Theta(-z q^alpha q^{chi(m)+u} e^{-2 pi i v} | q).
/// The witness lays out (m, u) for -tau n and (m1, v) for n theta.
RegimeReport eval_case_theta(const QContext& ctx, const ScalingParameter& sp, std::int64_t n,
                             const DiophantineWitness& witness, int case_id);

/// Targets and exponent for the witness searches of cases 2-7.
struct WitnessRequest {
  double rho = 1.0;
  DeclaredReal beta = DeclaredReal::rational(0);
  DeclaredReal beta2 = DeclaredReal::rational(0);
  /// Case 2 only: keep n with {n theta} equal to this value.
  std::optional<DeclaredReal> lambda;
};

/// Witnesses for `case_id` with n in [n_lo, n_hi], increasing in n. Cases 1
/// and 4 need no search; case 4 gets one exact witness per n.
std::vector<DiophantineWitness> case_witnesses(int case_id, const ScalingParameter& sp,
                                               const WitnessRequest& request, std::int64_t n_lo,
                                               std::int64_t n_hi);

/// Dispatches to the evaluator for the case.
RegimeReport evaluate_case(const QContext& ctx, const ScalingParameter& sp, int case_id,
                           std::int64_t n, const std::optional<DiophantineWitness>& witness);

}  // namespace qpr
