#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpr/asymptotics.hpp"

namespace qpr::harness {

struct NRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

/// "a..b" or a single integer "a".
NRange parse_n_range(std::string_view text);

struct VerifyConfig {
  QContext ctx;
  ScalingParameter sp;
  /// When set it must agree with the case the declarations select.
  std::optional<int> case_id;
  NRange range;
  WitnessRequest request;
  unsigned jobs = 1;
};

struct VerifyResult {
  int case_id = 0;
  std::vector<RegimeReport> rows;
  std::optional<std::string> advisory;
  /// 0 all eligible rows hold, 1 some eligible row violates its bound,
  /// 3 nothing eligible (or an out-of-range advisory).
  int exit_code = 3;
};

VerifyResult run_verify(const VerifyConfig& config);
int verify_exit_code(const std::vector<RegimeReport>& rows);

/// One sweep grid point: decay of the observed error along n.
struct SweepPoint {
  DeclaredReal tau;
  int case_id = 0;
  std::size_t points = 0;
  double fitted_slope = 0.0;
  /// d/dn of the log of the predicted order; NaN for the n^{-rho} regimes.
  double predicted_slope = 0.0;
  double ratio = 0.0;
  std::string predicted_order;
  std::size_t eligible = 0;
  std::size_t violations = 0;
};

std::vector<SweepPoint> run_sweep(const VerifyConfig& base, const std::vector<DeclaredReal>& taus);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Rows whose error sits above the rounding floor of the main term, as (n, log error).
void decay_samples(const std::vector<RegimeReport>& rows, std::vector<double>& n,
                   std::vector<double>& log_err);

std::string reports_csv(const std::vector<RegimeReport>& rows);
std::string reports_json(const std::vector<RegimeReport>& rows);
std::string witnesses_csv(const std::vector<DiophantineWitness>& ws, bool joint);
std::string witnesses_json(const std::vector<DiophantineWitness>& ws, bool joint);
std::string sweep_csv(const std::vector<SweepPoint>& points);
std::string sweep_json(const std::vector<SweepPoint>& points);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results land in
/// index order; the first exception by index is rethrown.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, Fn fn);

}  // namespace qpr::harness

#include "qpr/detail/parallel_map.hpp"
