// qpr: command-line front end for the q-Laguerre asymptotics library.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpr/asymptotics.hpp"
#include "qpr/diophantine.hpp"
#include "qpr/error.hpp"
#include "qpr/harness.hpp"
#include "qpr/qlaguerre.hpp"
#include "qpr/qseries.hpp"

namespace {

using namespace qpr;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 4;

struct Common {
  double q = 0.5;
  double alpha = 0.0;
  double z = 1.0;
  double z_imag = 0.0;
  std::string tau = "0";
  std::string theta = "0";
  bool assume_rational = false;
  bool assume_irrational = false;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_scaling) {
  sub->add_option("--q", c.q, "nome q in (0,1)")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "Laguerre order alpha > -1")->capture_default_str();
  sub->add_option("--z", c.z, "real part of z")->capture_default_str();
  sub->add_option("--z-imag", c.z_imag, "imaginary part of z")->capture_default_str();
  if (with_scaling) {
    sub->add_option("--tau", c.tau, "tau as p/q, integer, or a named irrational (sqrt2, golden, ...)")
        ->capture_default_str();
    sub->add_option("--theta", c.theta, "theta, same syntax as --tau")->capture_default_str();
  }
  auto* r = sub->add_flag("--assume-rational", c.assume_rational,
                          "accept free decimals and declare them rational");
  auto* i = sub->add_flag("--assume-irrational", c.assume_irrational,
                          "accept free decimals and declare them irrational");
  r->excludes(i);
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "write to this file instead of stdout");
  sub->add_option("--seed", c.seed,
                  "seed recorded with the run; every command is deterministic without it");
  sub->add_option("--jobs", c.jobs, "worker threads for per-n evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::optional<Arithmetic> assumption(const Common& c) {
  if (c.assume_rational) return Arithmetic::rational;
  if (c.assume_irrational) return Arithmetic::irrational;
  return std::nullopt;
}

// Targets such as beta only need a value; decimals are read as exact fractions.
DeclaredReal parse_target(const std::string& text, const Common& c) {
  const auto dot = text.find('.');
  if (dot != std::string::npos && text.find_first_of("eE") == std::string::npos &&
      text.size() - dot - 1 <= 15) {
    std::string digits = text;
    digits.erase(dot, 1);
    std::int64_t den = 1;
    for (std::size_t k = dot; k < text.size() - 1; ++k) den *= 10;
    try {
      return DeclaredReal::rational(std::stoll(digits), den);
    } catch (const std::exception&) {
    }
  }
  return parse_declared_real(text, assumption(c).value_or(Arithmetic::rational));
}

SeriesOptions series_options() {
  SeriesOptions opt;
  if (const char* env = std::getenv("QPR_MAX_TERMS")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw std::invalid_argument("QPR_MAX_TERMS must be a positive integer");
    }
    opt.max_terms = v;
  }
  return opt;
}

QContext make_context(const Common& c) {
  return QContext(c.q, c.alpha, Complex(c.z, c.z_imag), series_options());
}

ScalingParameter make_scaling(const Common& c) {
  return {parse_declared_real(c.tau, assumption(c)), parse_declared_real(c.theta, assumption(c))};
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + c.output);
  f << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string complex_text(Complex w) {
  if (w.imag() == 0.0) return fmt(w.real());
  return fmt(w.real()) + (w.imag() < 0 ? " - " : " + ") + fmt(std::abs(w.imag())) + "i";
}

std::string log_polar_text(const LogPolar& v) {
  std::string s = "log10|w| = " + fmt(v.log10_mag()) + ", arg = " + fmt(v.phase_degrees()) + " deg";
  if (std::abs(v.log_mag) < 700.0) s += "\n" + complex_text(v.to_complex());
  return s;
}

struct EvalArgs {
  std::string function;
  double a = 0.0;
  double a_imag = 0.0;
  std::string n = "0";
  std::optional<double> x;
  double x_imag = 0.0;
  bool structured = false;
};

int run_eval(const Common& c, const EvalArgs& e, bool format_given) {
  const SeriesOptions opt = series_options();
  std::optional<Complex> value;
  std::optional<LogPolar> lp;
  std::int64_t n = 0;
  const bool infinite = e.n == "inf" || e.n == "infinity";
  if (!infinite) n = std::stoll(e.n);
  const Complex z(c.z, c.z_imag);

  if (e.function == "pochhammer") {
    const Complex a(e.a, e.a_imag);
    value = infinite ? pochhammer_inf(a, c.q, opt) : pochhammer(a, c.q, n);
  } else if (e.function == "theta") {
    value = theta(z, c.q, opt);
  } else if (e.function == "ramanujan_a") {
    value = ramanujan_a(c.q, z, opt);
  } else if (e.function == "b_function") {
    value = b_function(c.q, z, opt);
  } else if (e.function == "laguerre") {
    const QContext ctx = make_context(c);
    const LogPolar x = e.x ? lp_from_complex({*e.x, e.x_imag}) : scale_point(ctx, make_scaling(c), n);
    lp = laguerre_direct_lp(ctx, n, x);
  } else if (e.function == "normalized_laguerre") {
    const QContext ctx = make_context(c);
    const ScalingParameter sp = make_scaling(c);
    if (sp.tau.value() < 0.0) {
      const SplitSumResult s = split_sums(ctx, sp, n);
      lp = s.total * s.normalizer / laguerre_normalizer(ctx, sp, n);
    } else {
      lp = normalized_laguerre(ctx, sp, n);
    }
  } else {
    std::cerr << "unknown function '" << e.function
              << "' (pochhammer, theta, ramanujan_a, b_function, laguerre, normalized_laguerre)\n";
    return kExitUsage;
  }

  if (!format_given) {
    emit(c, (lp ? log_polar_text(*lp) : complex_text(*value)) + "\n");
    return 0;
  }
  const LogPolar v = lp ? *lp : lp_from_complex(*value);
  const Complex w = std::abs(v.log_mag) < 700.0 ? v.to_complex() : Complex(NAN, NAN);
  if (c.format == "json") {
    nlohmann::ordered_json o;
    o["function"] = e.function;
    o["re"] = std::isfinite(w.real()) ? nlohmann::ordered_json(w.real()) : nullptr;
    o["im"] = std::isfinite(w.imag()) ? nlohmann::ordered_json(w.imag()) : nullptr;
    o["log10_mag"] = std::isfinite(v.log10_mag()) ? nlohmann::ordered_json(v.log10_mag()) : nullptr;
    o["phase_deg"] = v.phase_degrees();
    emit(c, o.dump(2) + "\n");
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "function,re,im,log10_mag,phase_deg\n%s,%.17g,%.17g,%.17g,%.17g\n",
                  e.function.c_str(), w.real(), w.imag(), v.log10_mag(), v.phase_degrees());
    emit(c, buf);
  }
  return 0;
}

struct SearchArgs {
  std::optional<int> case_id;
  std::string n = "1..40";
  double rho = 1.0;
  std::string beta = "0";
  std::string beta2 = "0";
  std::optional<std::string> lambda;
  std::string taus = "0.25,0.5,1";
  std::optional<std::string> theta2;
  std::int64_t nmax = 1000;
  bool chebyshev = false;
};

harness::VerifyConfig verify_config(const Common& c, const SearchArgs& s) {
  harness::VerifyConfig cfg{make_context(c), make_scaling(c), s.case_id,
                            harness::parse_n_range(s.n), {}, c.jobs};
  cfg.request.rho = s.rho;
  cfg.request.beta = parse_target(s.beta, c);
  cfg.request.beta2 = parse_target(s.beta2, c);
  if (s.lambda) cfg.request.lambda = parse_target(*s.lambda, c);
  return cfg;
}

int run_verify(const Common& c, const SearchArgs& s) {
  if (const auto adv = theorem_remark_check(parse_declared_real(c.tau, assumption(c)).value())) {
    std::cerr << "advisory: " << *adv << "\n";
    emit(c, c.format == "json" ? "[]\n" : "");
    return 3;
  }
  const harness::VerifyResult r = harness::run_verify(verify_config(c, s));
  emit(c, c.format == "json" ? harness::reports_json(r.rows) : harness::reports_csv(r.rows));
  if (r.exit_code == 3) std::cerr << "no eligible n in the requested range\n";
  if (r.exit_code == 1) std::cerr << "an eligible row violates its bound\n";
  return r.exit_code;
}

int run_witness(const Common& c, const SearchArgs& s) {
  const DeclaredReal theta = parse_declared_real(c.theta, assumption(c));
  const DeclaredReal beta = parse_target(s.beta, c);
  std::vector<DiophantineWitness> ws;
  const bool joint = s.theta2.has_value();
  if (joint) {
    ws = joint_witness_search(theta, parse_declared_real(*s.theta2, assumption(c)), beta,
                              parse_target(s.beta2, c), s.rho, s.nmax);
  } else if (s.chebyshev) {
    ws = chebyshev_witnesses(theta, beta, s.nmax);
  } else {
    ws = witness_search(theta, beta, s.rho, s.nmax);
  }
  if (ws.empty()) {
    emit(c, "");
    std::cerr << "no witnesses found\n";
    return 3;
  }
  emit(c, c.format == "json" ? harness::witnesses_json(ws, joint) : harness::witnesses_csv(ws, joint));
  return 0;
}

int run_sweep(const Common& c, const SearchArgs& s) {
  std::vector<DeclaredReal> taus;
  std::stringstream ss(s.taus);
  for (std::string item; std::getline(ss, item, ',');) {
    taus.push_back(parse_declared_real(item, assumption(c).value_or(Arithmetic::rational)));
  }
  if (taus.empty()) throw std::invalid_argument("--taus is empty");
  const auto points = harness::run_sweep(verify_config(c, s), taus);
  emit(c, c.format == "json" ? harness::sweep_json(points) : harness::sweep_csv(points));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Laguerre asymptotics: special functions, regime verification, witness search"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 bound violated at an eligible n, 2 usage or domain error,\n"
      "3 nothing eligible / no witnesses / tau <= -2, 4 numerical failure.\n"
      "verify columns: case,n,eligible,observed_error,bound,satisfied,nu,m,m1,beta,residual,\n"
      "  beta2,residual2,rho,main_re,main_im,exact_log10_mag,exact_phase_deg,notes,metadata\n"
      "witness columns: n,m,m1,beta,residual,rho (+beta2,residual2 with --theta2)\n"
      "sweep columns: tau,case,points,fitted_slope,predicted_slope,ratio,predicted_order,\n"
      "  eligible,violations\n"
      "QPR_MAX_TERMS overrides the series term cap (default 10000).");

  Common common;
  EvalArgs ev;
  SearchArgs sa;

  auto* eval = app.add_subcommand("eval", "evaluate a special function");
  add_common(eval, common, true);
  eval->add_option("function", ev.function,
                   "pochhammer | theta | ramanujan_a | b_function | laguerre | normalized_laguerre")
      ->required();
  eval->add_option("--a", ev.a, "pochhammer base (real part)");
  eval->add_option("--a-imag", ev.a_imag, "pochhammer base (imaginary part)");
  eval->add_option("--n", ev.n, "degree or product length; 'inf' for pochhammer")->capture_default_str();
  eval->add_option("--x", ev.x, "laguerre argument (real part); default x_n(z,s)");
  eval->add_option("--x-imag", ev.x_imag, "laguerre argument (imaginary part)");

  auto* verify = app.add_subcommand("verify", "check the theorem's bound over a range of n");
  add_common(verify, common, true);
  verify->add_option("--case", sa.case_id, "expected case 1..7")->check(CLI::Range(1, 7));
  verify->add_option("--n", sa.n, "range a..b")->capture_default_str();
  verify->add_option("--rho", sa.rho, "witness exponent")->capture_default_str();
  verify->add_option("--beta", sa.beta, "target for the irrational angle (case 7: for -tau)")
      ->capture_default_str();
  verify->add_option("--beta2", sa.beta2, "case 7 target for theta")->capture_default_str();
  verify->add_option("--lambda", sa.lambda, "case 2: keep n with {n theta} = lambda");

  auto* witness = app.add_subcommand("witness", "search Diophantine witnesses");
  add_common(witness, common, true);
  witness->add_option("--theta2", sa.theta2, "second angle for a joint search");
  witness->add_option("--beta", sa.beta, "target beta")->capture_default_str();
  witness->add_option("--beta2", sa.beta2, "target for the second angle")->capture_default_str();
  witness->add_option("--rho", sa.rho, "acceptance |residual| < n^-rho")->capture_default_str();
  witness->add_option("--nmax", sa.nmax, "scan n = 1..nmax")->capture_default_str();
  witness->add_flag("--chebyshev", sa.chebyshev, "accept |residual| <= 3/n instead");

  auto* sweep = app.add_subcommand("sweep", "fit error decay over a grid of tau");
  add_common(sweep, common, true);
  sweep->add_option("--taus", sa.taus, "comma-separated tau values")->capture_default_str();
  sweep->add_option("--n", sa.n, "range a..b")->capture_default_str();
  sweep->add_option("--rho", sa.rho, "witness exponent")->capture_default_str();
  sweep->add_option("--beta", sa.beta, "witness target")->capture_default_str();
  sweep->add_option("--beta2", sa.beta2, "second witness target")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return run_eval(common, ev, eval->count("--format") > 0);
    if (*verify) return run_verify(common, sa);
    if (*witness) return run_witness(common, sa);
    if (*sweep) return run_sweep(common, sa);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
