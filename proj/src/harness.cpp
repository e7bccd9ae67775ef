#include "qpr/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "qpr/error.hpp"

namespace qpr::harness {
namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <class T>
ordered_json jopt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return jnum(*v);
  return *v;
}

template <class T>
std::string copt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return num(*v);
  return std::to_string(*v);
}

std::string metadata_text(const std::map<std::string, std::string>& md) {
  std::string out;
  for (const auto& [k, v] : md) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::int64_t parse_i64(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: " + std::string(s));
  }
  return v;
}

struct Prediction {
  double slope;
  std::string order;
};

Prediction predict(int case_id, double tau, double q) {
  const double lq = std::log(q);
  switch (case_id) {
    case 1:
      return {tau * lq, "q^(tau n)"};
    case 2:
      return {0.5 * lq, "q^(n/2)"};
    case 4:
      return {lq * std::min(2.0 + tau, -tau) / 16.0, "q^(nu_n/2)"};
    default:
      return {kNaN, "log^2 n / n^rho"};
  }
}

}  // namespace

NRange parse_n_range(std::string_view text) {
  const auto dots = text.find("..");
  NRange r;
  if (dots == std::string_view::npos) {
    r.lo = r.hi = parse_i64(text);
  } else {
    r.lo = parse_i64(text.substr(0, dots));
    r.hi = parse_i64(text.substr(dots + 2));
  }
  if (r.lo < 1 || r.hi < r.lo) throw std::invalid_argument("n range must satisfy 1 <= a <= b");
  return r;
}

int verify_exit_code(const std::vector<RegimeReport>& rows) {
  bool any_eligible = false;
  for (const auto& r : rows) {
    if (!r.eligible) continue;
    any_eligible = true;
    if (!(r.observed_error <= r.bound)) return 1;
  }
  return any_eligible ? 0 : 3;
}

VerifyResult run_verify(const VerifyConfig& cfg) {
  VerifyResult out;
  out.advisory = theorem_remark_check(cfg.sp.tau.value());
  if (out.advisory) return out;
  out.case_id = classify_case(cfg.sp);
  if (cfg.case_id && *cfg.case_id != out.case_id) {
    throw DomainError("declared tau/theta select case " + std::to_string(out.case_id) +
                      ", not case " + std::to_string(*cfg.case_id));
  }
  std::vector<std::int64_t> ns;
  std::vector<std::optional<DiophantineWitness>> ws;
  if (out.case_id == 1) {
    for (std::int64_t n = cfg.range.lo; n <= cfg.range.hi; ++n) {
      ns.push_back(n);
      ws.emplace_back();
    }
  } else {
    for (auto& w : case_witnesses(out.case_id, cfg.sp, cfg.request, cfg.range.lo, cfg.range.hi)) {
      ns.push_back(w.n);
      ws.emplace_back(w);
    }
  }
  out.rows = parallel_map<RegimeReport>(ns.size(), cfg.jobs, [&](std::size_t i) {
    return evaluate_case(cfg.ctx, cfg.sp, out.case_id, ns[i], ws[i]);
  });
  out.exit_code = verify_exit_code(out.rows);
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return kNaN;
  const double nd = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nd;
  my /= nd;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : kNaN;
}

void decay_samples(const std::vector<RegimeReport>& rows, std::vector<double>& n,
                   std::vector<double>& log_err) {
  constexpr double kFloor = 64.0 * std::numeric_limits<double>::epsilon();
  for (const auto& r : rows) {
    if (!(r.observed_error > kFloor * std::max(1.0, std::abs(r.main)))) continue;
    n.push_back(static_cast<double>(r.n));
    log_err.push_back(std::log(r.observed_error));
  }
}

std::vector<SweepPoint> run_sweep(const VerifyConfig& base, const std::vector<DeclaredReal>& taus) {
  std::vector<SweepPoint> out;
  for (const auto& tau : taus) {
    VerifyConfig cfg = base;
    cfg.sp.tau = tau;
    cfg.case_id.reset();
    SweepPoint p;
    p.tau = tau;
    const VerifyResult vr = run_verify(cfg);
    if (vr.advisory) {
      p.predicted_order = *vr.advisory;
      p.fitted_slope = p.predicted_slope = p.ratio = kNaN;
      out.push_back(p);
      continue;
    }
    p.case_id = vr.case_id;
    std::vector<double> x, y;
    decay_samples(vr.rows, x, y);
    p.points = x.size();
    p.fitted_slope = fit_slope(x, y);
    const Prediction pr = predict(p.case_id, tau.value(), base.ctx.q());
    p.predicted_slope = pr.slope;
    p.predicted_order = pr.order;
    p.ratio = p.fitted_slope / p.predicted_slope;
    for (const auto& r : vr.rows) {
      if (!r.eligible) continue;
      ++p.eligible;
      if (!(r.observed_error <= r.bound)) ++p.violations;
    }
    out.push_back(p);
  }
  return out;
}

static const char* const kReportColumns =
    "case,n,eligible,observed_error,bound,satisfied,nu,m,m1,beta,residual,beta2,residual2,rho,"
    "main_re,main_im,exact_log10_mag,exact_phase_deg,notes,metadata";

std::string reports_csv(const std::vector<RegimeReport>& rows) {
  std::string s = std::string(kReportColumns) + "\n";
  for (const auto& r : rows) {
    const auto& w = r.witness;
    s += std::to_string(r.case_id) + "," + std::to_string(r.n) + "," + (r.eligible ? "1" : "0") +
         "," + num(r.observed_error) + "," + num(r.bound) + "," + (r.satisfied() ? "1" : "0") +
         "," + std::to_string(r.nu) + "," + (w ? std::to_string(w->m) : "") + "," +
         (w ? copt(w->m1) : "") + "," + (w ? num(w->target_beta) : "") + "," +
         (w ? num(w->residual) : "") + "," + (w ? copt(w->target_beta2) : "") + "," +
         (w ? copt(w->residual2) : "") + "," + (w ? num(w->rho) : "") + "," + num(r.main.real()) +
         "," + num(r.main.imag()) + "," + num(r.exact.log10_mag()) + "," +
         num(r.exact.phase_degrees()) + "," + csv_field(r.eligibility_notes) + "," +
         csv_field(metadata_text(r.metadata)) + "\n";
  }
  return s;
}

std::string reports_json(const std::vector<RegimeReport>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    const auto& w = r.witness;
    ordered_json o;
    o["case"] = r.case_id;
    o["n"] = r.n;
    o["eligible"] = r.eligible;
    o["observed_error"] = jnum(r.observed_error);
    o["bound"] = jnum(r.bound);
    o["satisfied"] = r.satisfied();
    o["nu"] = r.nu;
    o["m"] = w ? ordered_json(w->m) : ordered_json(nullptr);
    o["m1"] = w ? jopt(w->m1) : ordered_json(nullptr);
    o["beta"] = w ? jnum(w->target_beta) : ordered_json(nullptr);
    o["residual"] = w ? jnum(w->residual) : ordered_json(nullptr);
    o["beta2"] = w ? jopt(w->target_beta2) : ordered_json(nullptr);
    o["residual2"] = w ? jopt(w->residual2) : ordered_json(nullptr);
    o["rho"] = w ? jnum(w->rho) : ordered_json(nullptr);
    o["main_re"] = jnum(r.main.real());
    o["main_im"] = jnum(r.main.imag());
    o["exact_log10_mag"] = jnum(r.exact.log10_mag());
    o["exact_phase_deg"] = jnum(r.exact.phase_degrees());
    o["notes"] = r.eligibility_notes;
    o["metadata"] = metadata_text(r.metadata);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string witnesses_csv(const std::vector<DiophantineWitness>& ws, bool joint) {
  std::string s = joint ? "n,m,m1,beta,residual,rho,beta2,residual2\n" : "n,m,m1,beta,residual,rho\n";
  for (const auto& w : ws) {
    s += std::to_string(w.n) + "," + std::to_string(w.m) + "," + copt(w.m1) + "," +
         num(w.target_beta) + "," + num(w.residual) + "," + num(w.rho);
    if (joint) s += "," + copt(w.target_beta2) + "," + copt(w.residual2);
    s += "\n";
  }
  return s;
}

std::string witnesses_json(const std::vector<DiophantineWitness>& ws, bool joint) {
  ordered_json arr = ordered_json::array();
  for (const auto& w : ws) {
    ordered_json o;
    o["n"] = w.n;
    o["m"] = w.m;
    o["m1"] = jopt(w.m1);
    o["beta"] = jnum(w.target_beta);
    o["residual"] = jnum(w.residual);
    o["rho"] = jnum(w.rho);
    if (joint) {
      o["beta2"] = jopt(w.target_beta2);
      o["residual2"] = jopt(w.residual2);
    }
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string s =
      "tau,case,points,fitted_slope,predicted_slope,ratio,predicted_order,eligible,violations\n";
  for (const auto& p : points) {
    s += csv_field(p.tau.label()) + "," + std::to_string(p.case_id) + "," +
         std::to_string(p.points) + "," + num(p.fitted_slope) + "," + num(p.predicted_slope) +
         "," + num(p.ratio) + "," + csv_field(p.predicted_order) + "," +
         std::to_string(p.eligible) + "," + std::to_string(p.violations) + "\n";
  }
  return s;
}

std::string sweep_json(const std::vector<SweepPoint>& points) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : points) {
    ordered_json o;
    o["tau"] = p.tau.label();
    o["case"] = p.case_id;
    o["points"] = p.points;
    o["fitted_slope"] = jnum(p.fitted_slope);
    o["predicted_slope"] = jnum(p.predicted_slope);
    o["ratio"] = jnum(p.ratio);
    o["predicted_order"] = p.predicted_order;
    o["eligible"] = p.eligible;
    o["violations"] = p.violations;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace qpr::harness
