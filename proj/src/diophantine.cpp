#include "qpr/diophantine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qpr/error.hpp"
#include "qpr/numerics.hpp"

namespace qpr {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::int64_t floor_div128(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(q);
}

struct NearestResidual {
  std::int64_t m;
  double residual;
  bool exact;
};

// n theta - beta = m + residual, m the nearest integer.
NearestResidual nearest_residual(const DeclaredReal& theta, const DeclaredReal& beta,
                                 std::int64_t n) {
  if (theta.exact() && beta.exact()) {
    const Rational& t = *theta.exact();
    const Rational& b = *beta.exact();
    const __int128 num = static_cast<__int128>(n) * t.num * b.den - static_cast<__int128>(b.num) * t.den;
    const __int128 den = static_cast<__int128>(t.den) * b.den;
    const std::int64_t m = floor_div128(2 * num + den, 2 * den);
    const __int128 rem = num - static_cast<__int128>(m) * den;
    return {m, static_cast<double>(rem) / static_cast<double>(den), true};
  }
  if (theta.quadratic_surd()) {
    const QuadraticSurd& s = *theta.quadratic_surd();
    const long double th = (static_cast<long double>(s.p) + std::sqrt(static_cast<long double>(s.d))) /
                           static_cast<long double>(s.q);
    const long double x = static_cast<long double>(n) * th;
    const long double fl = std::floor(x);
    const long double y = (x - fl) - static_cast<long double>(beta.value());
    const long double k = std::nearbyint(y);
    return {static_cast<std::int64_t>(fl + k), static_cast<double>(y - k), false};
  }
  const auto pf = floor_frac_product(n, theta.value());
  const double y = pf.frac - beta.value();
  const double k = std::nearbyint(y);
  return {pf.floor + static_cast<std::int64_t>(k), y - k, false};
}

template <class Accept>
std::vector<DiophantineWitness> scan(const DeclaredReal& theta, const DeclaredReal& beta, double rho,
                                     std::int64_t n_max, Accept accept) {
  std::vector<DiophantineWitness> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const NearestResidual r = nearest_residual(theta, beta, n);
    if (!accept(n, r)) continue;
    DiophantineWitness w;
    w.n = n;
    w.m = r.m;
    w.target_beta = beta.value();
    w.residual = r.residual;
    w.rho = rho;
    w.exact = r.exact;
    out.push_back(w);
  }
  return out;
}

bool trusted(std::int64_t n, const NearestResidual& r) {
  return r.exact || std::abs(r.residual) > 1e3 * kEps * static_cast<double>(n);
}

void require_rho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("witness search: rho must be >= 0");
}

}  // namespace

FloorFrac floor_frac(double x) {
  if (!std::isfinite(x) || std::abs(x) >= 9.0e18) throw DomainError("floor_frac: x out of range");
  const double fl = std::floor(x);
  double frac = x - fl;
  // x slightly below an integer can round x - fl up to 1.
  if (frac >= 1.0) frac = std::nextafter(1.0, 0.0);
  return {static_cast<std::int64_t>(fl), frac};
}

int chi(std::int64_t n) { return static_cast<int>(((n % 2) + 2) % 2); }

std::vector<OrbitPoint> orbit(const DeclaredReal& theta, std::int64_t n_max) {
  if (n_max < 1) throw DomainError("orbit: n_max must be >= 1");
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const FracPart f = theta.times(n);
    out.push_back({n, f.frac, f.exact});
  }
  return out;
}

std::vector<OrbitPoint> orbit(double theta, std::int64_t n_max) {
  return orbit(DeclaredReal::assumed(theta, Arithmetic::irrational), n_max);
}

std::vector<Convergent> convergents(const DeclaredReal& theta, std::size_t count) {
  std::vector<Convergent> out;
  if (count == 0) throw DomainError("convergents: count must be >= 1");
  __int128 p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  constexpr __int128 kLimit = std::numeric_limits<std::int64_t>::max();
  auto push = [&](__int128 a) {
    const __int128 p = a * p_prev + p_prev2;
    const __int128 q = a * q_prev + q_prev2;
    if (p > kLimit || p < -kLimit || q > kLimit) return false;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    out.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
    return true;
  };

  if (theta.exact()) {
    __int128 num = theta.exact()->num, den = theta.exact()->den;
    while (out.size() < count && den != 0) {
      const __int128 a = floor_div128(num, den);
      if (!push(a)) break;
      const __int128 r = num - a * den;
      num = den;
      den = r;
    }
    return out;
  }

  if (theta.quadratic_surd()) {
    // x = (P + sqrt(D)) / Q with Q | D - P^2, expanded exactly.
    QuadraticSurd s = *theta.quadratic_surd();
    __int128 P = s.p, D = s.d, Q = s.q;
    if ((D - P * P) % Q != 0) {
      const __int128 aq = Q < 0 ? -Q : Q;
      P *= aq;
      D *= aq * aq;
      Q *= aq;
    }
    auto isqrt = [](__int128 v) {
      auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
      while (r * r > v) --r;
      while ((r + 1) * (r + 1) <= v) ++r;
      return r;
    };
    const __int128 root = isqrt(D);
    while (out.size() < count) {
      const __int128 a = Q > 0 ? floor_div128(P + root, Q) : floor_div128(-P - root - 1, -Q);
      if (!push(a)) break;
      P = a * Q - P;
      Q = (D - P * P) / Q;
    }
    return out;
  }

  const long double x0 = theta.value();
  long double x = x0;
  while (out.size() < count) {
    const long double a = std::floor(x);
    if (std::abs(a) > 9.0e18L || !push(static_cast<__int128>(a))) break;
    const long double p = static_cast<long double>(p_prev);
    const long double q = static_cast<long double>(q_prev);
    // Stop once p/q reproduces the double to within its own precision.
    if (std::abs(q * x0 - p) <= 4.0L * kEps * q * std::max(1.0L, std::abs(x0))) break;
    const long double f = x - a;
    if (f == 0.0L) break;
    x = 1.0L / f;
  }
  return out;
}

std::vector<Convergent> convergents(double theta, std::size_t count) {
  return convergents(DeclaredReal::assumed(theta, Arithmetic::irrational), count);
}

std::vector<DiophantineWitness> witness_search(const DeclaredReal& theta, const DeclaredReal& beta,
                                               double rho, std::int64_t n_max) {
  require_rho(rho);
  if (n_max < 2) throw DomainError("witness_search: n_max must be >= 2");
  return scan(theta, beta, rho, n_max, [rho](std::int64_t n, const NearestResidual& r) {
    return std::abs(r.residual) < std::pow(static_cast<double>(n), -rho) && trusted(n, r);
  });
}

std::vector<DiophantineWitness> witness_search(double theta, double beta, double rho,
                                               std::int64_t n_max) {
  return witness_search(DeclaredReal::assumed(theta, Arithmetic::irrational),
                        DeclaredReal::assumed(beta, Arithmetic::irrational), rho, n_max);
}

std::vector<DiophantineWitness> chebyshev_witnesses(const DeclaredReal& theta,
                                                    const DeclaredReal& beta, std::int64_t n_max) {
  if (n_max < 2) throw DomainError("chebyshev_witnesses: n_max must be >= 2");
  return scan(theta, beta, 1.0, n_max, [](std::int64_t n, const NearestResidual& r) {
    return std::abs(r.residual) <= 3.0 / static_cast<double>(n) && trusted(n, r);
  });
}

std::vector<DiophantineWitness> joint_witness_search(const DeclaredReal& theta1,
                                                     const DeclaredReal& theta2,
                                                     const DeclaredReal& beta1,
                                                     const DeclaredReal& beta2, double rho,
                                                     std::int64_t n_max) {
  require_rho(rho);
  if (n_max < 2) throw DomainError("joint_witness_search: n_max must be >= 2");
  std::vector<DiophantineWitness> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double thr = std::pow(static_cast<double>(n), -rho);
    const NearestResidual a = nearest_residual(theta1, beta1, n);
    if (!(std::abs(a.residual) < thr && trusted(n, a))) continue;
    const NearestResidual b = nearest_residual(theta2, beta2, n);
    if (!(std::abs(b.residual) < thr && trusted(n, b))) continue;
    DiophantineWitness w;
    w.n = n;
    w.m = a.m;
    w.target_beta = beta1.value();
    w.residual = a.residual;
    w.m1 = b.m;
    w.target_beta2 = beta2.value();
    w.residual2 = b.residual;
    w.rho = rho;
    w.exact = a.exact && b.exact;
    out.push_back(w);
  }
  return out;
}

std::string liouville_decimal(int depth) {
  if (depth < 1 || depth > 6) throw DomainError("liouville_decimal: depth must be in 1..6");
  std::int64_t last = 1;
  for (int k = 2; k <= depth; ++k) last *= k;
  std::string digits(static_cast<std::size_t>(last), '0');
  std::int64_t fact = 1;
  for (int k = 1; k <= depth; ++k) {
    fact *= k;
    digits[static_cast<std::size_t>(fact - 1)] = '1';
  }
  return "0." + digits;
}

std::vector<IrrationalFixture> fixture_irrationals() {
  const std::string liouville = liouville_decimal(4);
  return {
      {"sqrt2", DeclaredReal::surd({0, 2, 1}, "sqrt2"), 2.0, std::nullopt, ""},
      {"sqrt3", DeclaredReal::surd({0, 3, 1}, "sqrt3"), 2.0, std::nullopt, ""},
      {"golden", DeclaredReal::surd({1, 5, 2}, "golden"), 2.0, std::nullopt, ""},
      // Stand-in for the Liouville constant; the truncation itself is a
      // finite decimal, so it is only declared irrational by convention.
      {"liouville", DeclaredReal::irrational(std::stod(liouville), "liouville"),
       std::numeric_limits<double>::infinity(), 4, liouville},
  };
}

const IrrationalFixture& fixture(std::string_view name) {
  static const std::vector<IrrationalFixture> catalog = fixture_irrationals();
  for (const auto& f : catalog) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown irrational fixture: " + std::string(name));
}

DeclaredReal parse_declared_real(std::string_view text, std::optional<Arithmetic> assume) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty numeric argument");

  auto parse_int = [](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not an integer: " + std::string(s));
    }
    return v;
  };

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const bool alpha = std::isalpha(static_cast<unsigned char>(body.front()));
  if (alpha) {
    std::string name(body);
    if (name == "phi") name = "golden";
    if (name.rfind("sqrt(", 0) == 0 && name.back() == ')') {
      name = "sqrt" + name.substr(5, name.size() - 6);
    }
    DeclaredReal value;
    if (name == "sqrt2" || name == "sqrt3" || name == "golden" || name == "liouville") {
      value = fixture(name).value;
    } else if (name.rfind("sqrt", 0) == 0) {
      const std::int64_t d = parse_int(std::string_view(name).substr(4));
      const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(d))));
      value = root * root == d ? DeclaredReal::rational(root)
                               : DeclaredReal::surd({0, d, 1}, name);
    } else {
      throw std::invalid_argument("unknown constant: " + std::string(body));
    }
    return negative ? value.negated() : value;
  }

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return DeclaredReal::rational(parse_int(trim(text.substr(0, slash))),
                                  parse_int(trim(text.substr(slash + 1))));
  }
  if (text.find_first_of(".eE") == std::string_view::npos) {
    return DeclaredReal::rational(parse_int(text[0] == '+' ? text.substr(1) : text));
  }
  if (!assume) {
    throw std::invalid_argument("free decimal '" + std::string(text) +
                                "' needs --assume-rational or --assume-irrational");
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: " + std::string(text));
  }
  return DeclaredReal::assumed(v, *assume);
}

}  // namespace qpr
