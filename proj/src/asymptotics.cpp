#include "qpr/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <utility>

#include "qpr/error.hpp"

namespace qpr {
namespace {

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Shared pieces of the bounds, all as natural logs.
struct BoundParts {
  double log_qq_inf;      // (q;q)_inf
  double log_neg_q2_inf;  // (-q^2;q)_inf
  double log_one_minus_q;
  double log_zqa;         // log(|z| q^alpha)
};

BoundParts bound_parts(const QContext& ctx) {
  const double q = ctx.q();
  const auto& opt = ctx.options();
  return {std::log(pochhammer_inf(q, q, opt).real()),
          std::log(pochhammer_inf(-q * q, q, opt).real()), std::log1p(-q),
          std::log(std::abs(ctx.z())) + ctx.alpha() * ctx.log_q()};
}

// 7 or 48 times (-q^2;q)^2 B_q(1/(|z|q^alpha)) / ((1-q)^3 (q;q)_inf).
double log_aq_prefactor(const QContext& ctx, const BoundParts& p, double constant) {
  const double b = b_function(ctx.q(), std::exp(-p.log_zqa), ctx.options()).real();
  return std::log(constant) + 2.0 * p.log_neg_q2_inf + std::log(b) - 3.0 * p.log_one_minus_q -
         p.log_qq_inf;
}

// 30 or 96 times (-q^2;q)^3 Theta(|z|q^alpha | sqrt q) / ((1-q)^4 (q;q)_inf).
double log_theta_prefactor(const QContext& ctx, const BoundParts& p, double constant) {
  const LogPolar th = theta_lp(std::exp(p.log_zqa), std::sqrt(ctx.q()), ctx.options());
  return std::log(constant) + 3.0 * p.log_neg_q2_inf + th.log_mag - 4.0 * p.log_one_minus_q -
         p.log_qq_inf;
}

// log(log^2 n / n^rho)
double log_diophantine_term(std::int64_t n, double rho) {
  const double ln = std::log(static_cast<double>(n));
  return 2.0 * std::log(ln) - rho * ln;
}

// Failed conditions joined with "; ".
std::string failed(std::initializer_list<std::pair<bool, const char*>> checks) {
  std::string out;
  for (const auto& [ok, what] : checks) {
    if (ok) continue;
    if (!out.empty()) out += "; ";
    out += what;
  }
  return out;
}

bool is_at_most_quarter(double lhs, double rhs) { return lhs <= rhs / 4.0; }

void require_case(const ScalingParameter& sp, int case_id, const char* who) {
  const int actual = classify_case(sp);
  if (actual != case_id) {
    throw DomainError(std::string(who) + ": parameters select case " + std::to_string(actual) +
                      ", not case " + std::to_string(case_id));
  }
}

// |a - b| measured on the circle R/Z.
double circle_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d - std::floor(d), 1.0 - (d - std::floor(d)));
}

constexpr double kWitnessTol = 1e-9;

}  // namespace

std::int64_t nu_n(int case_id, std::int64_t n, double tau, double q) {
  if (n < 2) throw DomainError("nu_n: requires n >= 2");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("nu_n: requires 0 < q < 1");
  const double nd = static_cast<double>(n);
  switch (case_id) {
    case 3:
    case 5:
    case 6:
    case 7: {
      const double ln = std::log(nd);
      return static_cast<std::int64_t>(std::floor(std::pow(q, 4) * ln * ln / (1.0 - std::log(q))));
    }
    case 4:
      if (!(tau > -2.0 && tau < 0.0)) throw DomainError("nu_n: case 4 requires -2 < tau < 0");
      return std::min(static_cast<std::int64_t>(std::floor((2.0 + tau) * nd / 8.0)),
                      static_cast<std::int64_t>(std::floor(-tau * nd / 8.0)));
    default:
      throw DomainError("nu_n: case must be 3, 4, 5, 6 or 7");
  }
}

int classify_case(const ScalingParameter& sp) {
  const double tau = sp.tau.value();
  if (tau <= -2.0) throw DomainError("classify_case: tau <= -2 lies outside the theorem");
  if (sp.tau.is_rational() && sp.tau.is_zero()) return sp.theta.is_rational() ? 2 : 3;
  if (tau > 0.0) return 1;
  if (tau == 0.0) {
    throw DomainError("classify_case: tau = 0 must be declared as the rational 0");
  }
  const bool tr = sp.tau.is_rational();
  const bool hr = sp.theta.is_rational();
  if (tr && hr) return 4;
  if (tr) return 5;
  if (hr) return 6;
  return 7;
}

std::optional<std::string> theorem_remark_check(double tau) {
  if (tau <= -2.0) {
    return "tau = " + fmt(tau) + " <= -2: outside the range of the theorem, no regime applies";
  }
  return std::nullopt;
}

RegimeReport eval_case1(const QContext& ctx, const ScalingParameter& sp, std::int64_t n) {
  if (!(sp.tau.value() > 0.0)) throw DomainError("eval_case1: requires tau > 0");
  RegimeReport r;
  r.case_id = 1;
  r.n = n;
  const BoundParts p = bound_parts(ctx);
  r.exact = normalized_laguerre(ctx, sp, n) * LogPolar::make(p.log_qq_inf, 0.0);
  r.main = 1.0;
  r.observed_error = std::abs(r.exact.to_complex() - r.main);
  const double q = ctx.q();
  const double absz = std::abs(ctx.z());
  const double b = b_function(q, std::pow(q, 2.0 - ctx.alpha()) / absz, ctx.options()).real();
  r.bound = std::exp((1.0 - ctx.alpha()) * ctx.log_q() + std::log(b) +
                     sp.tau.value() * static_cast<double>(n) * ctx.log_q() - p.log_one_minus_q -
                     std::log(absz));
  r.eligible = true;
  r.eligibility_notes = "always eligible";
  return r;
}

RegimeReport eval_case_aq(const QContext& ctx, const ScalingParameter& sp, std::int64_t n,
                          const DiophantineWitness& w, int case_id) {
  if (case_id != 2 && case_id != 3) throw DomainError("eval_case_aq: case must be 2 or 3");
  if (!(sp.tau.is_rational() && sp.tau.is_zero())) {
    throw DomainError("eval_case_aq: requires tau = 0");
  }
  require_case(sp, case_id, "eval_case_aq");
  if (w.n != n) throw DomainError("eval_case_aq: witness is for a different n");
  const FracPart nt = sp.theta.times(n);
  const double recon = static_cast<double>(nt.floor - w.m) + nt.frac - w.target_beta - w.residual;
  if (std::abs(recon) > kWitnessTol) throw DomainError("eval_case_aq: witness inconsistent with theta");
  if (case_id == 2 && w.residual != 0.0) {
    throw DomainError("eval_case_aq: case 2 needs n theta = m + lambda exactly");
  }
  if (case_id == 3 && !(std::abs(w.residual) < std::pow(static_cast<double>(n), -w.rho))) {
    throw DomainError("eval_case_aq: witness residual exceeds n^{-rho}");
  }

  RegimeReport r;
  r.case_id = case_id;
  r.n = n;
  r.witness = w;
  const BoundParts p = bound_parts(ctx);
  r.exact = normalized_laguerre(ctx, sp, n) * LogPolar::make(p.log_qq_inf, 0.0);
  const Complex arg = std::polar(std::exp(-p.log_zqa), kTwoPi * w.target_beta - std::arg(ctx.z()));
  r.main = ramanujan_a(ctx.q(), arg, ctx.options());
  r.observed_error = std::abs(r.exact.to_complex() - r.main);
  const double lq = ctx.log_q();
  const double nd = static_cast<double>(n);

  if (case_id == 2) {
    const std::int64_t h = n / 2;
    const double terms = log_add(0.5 * nd * lq, 0.25 * nd * nd * lq - static_cast<double>(h) * p.log_zqa);
    r.bound = std::exp(log_aq_prefactor(ctx, p, 7.0) + terms);
    r.eligible = h >= 1;
    r.eligibility_notes = r.eligible ? "floor(n/2) >= 1" : "floor(n/2) = 0";
    return r;
  }

  r.nu = n >= 2 ? nu_n(3, n, 0.0, ctx.q()) : 0;
  const double nu = static_cast<double>(r.nu);
  const double terms = log_add(log_diophantine_term(n, w.rho), nu * nu * lq - nu * p.log_zqa);
  r.bound = std::exp(log_aq_prefactor(ctx, p, 48.0) + terms);
  const double n_rho = std::pow(nd, w.rho);
  const bool c1 = r.nu >= 2;
  const bool c2 = is_at_most_quarter(nu, std::pow(nd, std::min(1.0, w.rho)) / 8.0);
  const bool c3 = is_at_most_quarter(std::pow(ctx.q(), nd / 2.0), nu / n_rho);
  r.eligible = c1 && c2 && c3;
  r.eligibility_notes = failed({{c1, "nu < 2"},
                                {c2, "nu > n^min(1,rho)/32"},
                                {c3, "q^(n/2) > nu/(4 n^rho)"}});
  if (r.eligible) r.eligibility_notes = "nu >= 2, nu <= n^min(1,rho)/32, q^(n/2) <= nu/(4 n^rho)";
  return r;
}

RegimeReport eval_case_theta(const QContext& ctx, const ScalingParameter& sp, std::int64_t n,
                             const DiophantineWitness& w, int case_id) {
  if (case_id < 4 || case_id > 7) throw DomainError("eval_case_theta: case must be 4..7");
  const double tau = sp.tau.value();
  if (!(tau > -2.0 && tau < 0.0)) throw DomainError("eval_case_theta: requires -2 < tau < 0");
  require_case(sp, case_id, "eval_case_theta");
  if (w.n != n) throw DomainError("eval_case_theta: witness is for a different n");

  const SplitSumResult split = split_sums(ctx, sp, n, w.m);
  const double u = w.target_beta;
  const double v = w.target_beta2.value_or(split.d_n);
  if (std::abs(split.c_n - u - w.residual) > kWitnessTol ||
      circle_distance(split.d_n, v + w.residual2.value_or(0.0)) > kWitnessTol) {
    throw DomainError("eval_case_theta: witness inconsistent with tau and theta");
  }
  const double n_rho = std::pow(static_cast<double>(n), -w.rho);
  const bool tau_exact = case_id == 4 || case_id == 5;
  const bool theta_exact = case_id == 4 || case_id == 6;
  if ((tau_exact && w.residual != 0.0) || (theta_exact && w.residual2.value_or(0.0) != 0.0)) {
    throw DomainError("eval_case_theta: rational angle needs a zero residual");
  }
  if ((!tau_exact && !(std::abs(w.residual) < n_rho)) ||
      (!theta_exact && !(std::abs(w.residual2.value_or(0.0)) < n_rho))) {
    throw DomainError("eval_case_theta: witness residual exceeds n^{-rho}");
  }

  RegimeReport r;
  r.case_id = case_id;
  r.n = n;
  r.witness = w;
  r.exact = split.total;
  const double lq = ctx.log_q();
  const BoundParts p = bound_parts(ctx);
  const Complex arg =
      std::polar(std::exp(p.log_zqa + (chi(split.m) + u) * lq), std::arg(ctx.z()) + kPi - kTwoPi * v);
  r.main = theta(arg, ctx.q(), ctx.options());
  r.observed_error = std::abs(r.exact.to_complex() - r.main);
  r.metadata["m"] = std::to_string(split.m);
  r.metadata["floor_m_half"] = std::to_string(split.floor_m_half);
  r.metadata["c_n"] = fmt(split.c_n);
  r.metadata["d_n"] = fmt(split.d_n);

  const double nd = static_cast<double>(n);
  r.nu = n >= 2 ? nu_n(case_id, n, tau, ctx.q()) : 0;
  const double nu = static_cast<double>(r.nu);
  const double t_plus = nu * p.log_zqa + nu * nu * lq;
  const double t_minus = 0.5 * nu * nu * lq - nu * p.log_zqa;
  const double cap = nd * std::min((2.0 + tau) / 8.0, -tau / 8.0);

  if (case_id == 4) {
    r.bound = std::exp(log_theta_prefactor(ctx, p, 30.0) +
                       log_add(log_add(0.5 * nu * lq, t_plus), t_minus));
    r.metadata["constant"] = "30";
    r.metadata["constant_note"] =
        "the theorem states 30; the final estimate of its proof carries 15";
    const bool c1 = r.nu >= 2;
    const bool c2 = nu <= cap;
    const bool c3 = split.m > 0;
    r.eligible = c1 && c2 && c3;
    r.eligibility_notes = r.eligible ? "nu >= 2, nu <= n min((2+tau)/8, -tau/8), m > 0"
                                     : failed({{c1, "nu < 2"}, {c2, "nu above cap"}, {c3, "m = 0"}});
    return r;
  }

  r.bound = std::exp(log_theta_prefactor(ctx, p, 96.0) +
                     log_add(log_add(t_plus, t_minus), log_diophantine_term(n, w.rho)));
  r.metadata["constant"] = "96";
  const double n_pow = std::pow(nd, w.rho);
  const bool c1 = r.nu >= 2;
  const bool c2 = is_at_most_quarter(nu, n_pow / 8.0);
  const bool c3 = is_at_most_quarter(std::pow(ctx.q(), nu), nu / n_pow);
  const bool c4 = nu <= cap;
  const bool c5 = split.m > 0;
  r.eligible = c1 && c2 && c3 && c4 && c5;
  if (r.eligible) {
    r.eligibility_notes = "nu >= 2, nu <= n^rho/32, q^nu <= nu/(4 n^rho), nu <= n min((2+tau)/8, -tau/8), m > 0";
  } else {
    r.eligibility_notes = failed({{c1, "nu < 2"},
                                  {c2, "nu > n^rho/32"},
                                  {c3, "q^nu > nu/(4 n^rho)"},
                                  {c4, "nu above cap"},
                                  {c5, "m = 0"}});
  }
  return r;
}

std::vector<DiophantineWitness> case_witnesses(int case_id, const ScalingParameter& sp,
                                               const WitnessRequest& req, std::int64_t n_lo,
                                               std::int64_t n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw DomainError("case_witnesses: requires 1 <= n_lo <= n_hi");
  std::vector<DiophantineWitness> out;
  const std::int64_t scan_max = std::max<std::int64_t>(n_hi, 2);
  auto keep = [&](std::vector<DiophantineWitness> all) {
    for (auto& w : all) {
      if (w.n >= n_lo && w.n <= n_hi) out.push_back(w);
    }
  };
  const DeclaredReal neg_tau = sp.tau.negated();

  switch (case_id) {
    case 1:
      return out;
    case 2: {
      if (!sp.theta.exact()) throw DomainError("case_witnesses: case 2 needs a rational theta");
      for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const FracPart f = sp.theta.times(n);
        if (req.lambda && req.lambda->exact() && !(*f.exact == *req.lambda->exact())) continue;
        if (req.lambda && !req.lambda->exact() && f.frac != req.lambda->value()) continue;
        DiophantineWitness w;
        w.n = n;
        w.m = f.floor;
        w.target_beta = f.frac;
        w.rho = req.rho;
        w.exact = true;
        out.push_back(w);
      }
      return out;
    }
    case 3:
      keep(witness_search(sp.theta, req.beta, req.rho, scan_max));
      return out;
    case 4:
    case 5:
    case 6: {
      std::vector<DiophantineWitness> base;
      if (case_id == 5) base = witness_search(sp.theta, req.beta, req.rho, scan_max);
      if (case_id == 6) base = witness_search(neg_tau, req.beta, req.rho, scan_max);
      auto build = [&](std::int64_t n, const DiophantineWitness* found) {
        DiophantineWitness w;
        w.n = n;
        w.rho = req.rho;
        const FracPart a = neg_tau.times(n);
        const FracPart b = sp.theta.times(n);
        w.m = a.floor;
        w.target_beta = a.frac;
        w.m1 = b.floor;
        w.target_beta2 = b.frac;
        w.residual2 = 0.0;
        w.exact = a.exact.has_value() && b.exact.has_value();
        if (case_id == 5) {
          w.m1 = found->m;
          w.target_beta2 = found->target_beta;
          w.residual2 = found->residual;
          w.exact = false;
        } else if (case_id == 6) {
          w.m = found->m;
          w.target_beta = found->target_beta;
          w.residual = found->residual;
          w.exact = false;
        }
        return w;
      };
      if (case_id == 4) {
        for (std::int64_t n = n_lo; n <= n_hi; ++n) out.push_back(build(n, nullptr));
      } else {
        for (const auto& f : base) {
          if (f.n >= n_lo && f.n <= n_hi) out.push_back(build(f.n, &f));
        }
      }
      return out;
    }
    case 7:
      keep(joint_witness_search(neg_tau, sp.theta, req.beta, req.beta2, req.rho, scan_max));
      return out;
    default:
      throw DomainError("case_witnesses: case must be 1..7");
  }
}

RegimeReport evaluate_case(const QContext& ctx, const ScalingParameter& sp, int case_id,
                           std::int64_t n, const std::optional<DiophantineWitness>& witness) {
  if (case_id == 1) return eval_case1(ctx, sp, n);
  if (case_id == 4 && !witness) {
    const auto ws = case_witnesses(4, sp, {}, n, n);
    return eval_case_theta(ctx, sp, n, ws.front(), 4);
  }
  if (!witness) throw DomainError("evaluate_case: case " + std::to_string(case_id) + " needs a witness");
  if (case_id == 2 || case_id == 3) return eval_case_aq(ctx, sp, n, *witness, case_id);
  return eval_case_theta(ctx, sp, n, *witness, case_id);
}

}  // namespace qpr
