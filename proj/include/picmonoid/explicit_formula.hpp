#pragma once

// Numerical check of the Weil explicit formula for the Riemann zeta function.
//
// A radial test function h on the idele classes is written as g(t) = h(e^t),
// an even function supported in [-T, T]. Conventions used throughout:
//
//   ĥ(z)  = ∫ g(t) e^{zt} dt
//   spectral side  = ĥ(0) + ĥ(1) - Σ_γ 2 Re ĥ(1/2 + iγ)
//   W_p   = Σ_{m log p <= T} log p · (g(m log p) + p^{-m} g(-m log p))
//   W_∞   = g(0) log π + ∫_0^∞ [(g(u)e^u + g(-u)) / (2 sinh u) - g(0) e^{-2u}/u] du
//
// W_p comes from splitting Q_p^× into shells |u|_p = p^{-k}; W_∞ is the
// archimedean principal value with the Γ_R local factor.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "picmonoid/arith.hpp"
#include "picmonoid/error.hpp"

namespace picmonoid {

enum class TestKind { Zero, Gaussian, Bump, Triangle };

/// Even, compactly supported test functions on R.
///  gaussian: (e^{-(t-c)²/2σ²} + e^{-(t+c)²/2σ²}) · cos(ωt) · β(t/T)
///  bump:     β(t/T) · cos(ωt)
///  triangle: (1 - (t/T)²)³ · cos(ωt)      (C² at the edge of the support)
///  zero:     0
/// with β(x) = exp(1 - 1/(1 - x²)) on |x| < 1.
class TestFunction {
 public:
  TestFunction() = default;
  TestFunction(TestKind kind, double support, double sigma = 0.1, double center = 0.0, double omega = 0.0)
      : kind_(kind), support_(support), sigma_(sigma), center_(center), omega_(omega) {
    if (!(support > 0)) throw Error(ErrorCode::InvalidArgument, "support T must be positive");
    if (kind == TestKind::Gaussian && !(sigma > 0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  }

  static TestFunction zero(double support = 5.0) { return TestFunction(TestKind::Zero, support); }
  static TestFunction gaussian(double support, double sigma, double center = 0.0, double omega = 0.0) {
    return TestFunction(TestKind::Gaussian, support, sigma, center, omega);
  }

  TestKind kind() const { return kind_; }
  double support() const { return support_; }
  double sigma() const { return sigma_; }
  double center() const { return center_; }
  double omega() const { return omega_; }
  /// Number of continuous derivatives (-1 for unbounded).
  int smoothness() const { return kind_ == TestKind::Triangle ? 2 : -1; }

  double operator()(double t) const {
    double x = t / support_;
    if (std::abs(x) >= 1.0 || kind_ == TestKind::Zero) return 0.0;
    double wave = omega_ == 0.0 ? 1.0 : std::cos(omega_ * t);
    switch (kind_) {
      case TestKind::Gaussian: {
        double s2 = 2 * sigma_ * sigma_;
        double a = t - center_, b = t + center_;
        return (std::exp(-a * a / s2) + std::exp(-b * b / s2)) * wave * bump(x);
      }
      case TestKind::Bump:
        return bump(x) * wave;
      case TestKind::Triangle: {
        double y = 1 - x * x;
        return y * y * y * wave;
      }
      default:
        return 0.0;
    }
  }

  /// "kind:T=..,sigma=..,center=..,omega=.."; every key is optional.
  static TestFunction parse(const std::string& text) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::map<std::string, double> params{{"T", 5.0}, {"sigma", 0.1}, {"center", 0.0}, {"omega", 0.0}};
    if (colon != std::string::npos) {
      std::stringstream rest(text.substr(colon + 1));
      std::string item;
      while (std::getline(rest, item, ',')) {
        auto eq = item.find('=');
        std::string key = item.substr(0, eq);
        if (eq == std::string::npos || !params.count(key))
          throw Error(ErrorCode::ParseError, "bad test-function parameter '" + item + "'");
        try {
          std::size_t used = 0;
          params[key] = std::stod(item.substr(eq + 1), &used);
          if (used != item.size() - eq - 1) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::ParseError, "bad number in '" + item + "'");
        }
      }
    }
    static const std::map<std::string, TestKind> kinds{
        {"zero", TestKind::Zero}, {"gaussian", TestKind::Gaussian}, {"bump", TestKind::Bump}, {"triangle", TestKind::Triangle}};
    auto it = kinds.find(name);
    if (it == kinds.end()) throw Error(ErrorCode::ParseError, "unknown test function '" + name + "'");
    return TestFunction(it->second, params["T"], params["sigma"], params["center"], params["omega"]);
  }

  std::string str() const {
    static const char* names[] = {"zero", "gaussian", "bump", "triangle"};
    auto num = [](double x) {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
      return std::string(buf, end);
    };
    std::string out = std::string(names[static_cast<int>(kind_)]) + ":T=" + num(support_);
    if (kind_ == TestKind::Gaussian) out += ",sigma=" + num(sigma_) + ",center=" + num(center_);
    if (kind_ != TestKind::Zero) out += ",omega=" + num(omega_);
    return out;
  }

 private:
  static double bump(double x) { return std::exp(1.0 - 1.0 / (1.0 - x * x)); }

  TestKind kind_ = TestKind::Zero;
  double support_ = 5.0;
  double sigma_ = 0.1;
  double center_ = 0.0;
  double omega_ = 0.0;
};

/// Kahan–Babuška–Neumaier summation; the result depends only on the order of add().
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

inline constexpr double kQuadratureTarget = 1e-12;
inline constexpr double kQuadratureLimit = 1e-8;

/// Adaptive Gauss–Kronrod with an absolute tolerance shared out by width.
/// [a, b] is first split into equal panels so narrow features cannot slip
/// between the nodes of a single coarse rule.
template <class F>
QuadratureResult integrate_panels(F f, double a, double b, int panels, double abs_tol = 1e-13) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  using Gauss = boost::math::quadrature::gauss<double, 15>;
  CompensatedSum total, err;
  struct Piece {
    double lo, hi;
    int depth;
  };
  std::vector<Piece> stack;
  double width = (b - a) / panels;
  for (int i = panels - 1; i >= 0; --i) stack.push_back({a + i * width, (i + 1 == panels) ? b : a + (i + 1) * width, 0});
  while (!stack.empty()) {
    Piece piece = stack.back();
    stack.pop_back();
    double v = Kronrod::integrate(f, piece.lo, piece.hi, 0);
    double e = std::abs(v - Gauss::integrate(f, piece.lo, piece.hi));
    double allowed = std::max(abs_tol * (piece.hi - piece.lo) / (b - a), 1e-14 * std::abs(v));
    if (e > allowed && piece.depth < 30) {
      double mid = (piece.lo + piece.hi) / 2;
      stack.push_back({mid, piece.hi, piece.depth + 1});
      stack.push_back({piece.lo, mid, piece.depth + 1});
      continue;
    }
    total.add(v);
    err.add(std::abs(e));
  }
  return {total.value(), err.value()};
}

template <class F>
QuadratureResult checked(F f, double a, double b, int panels, const char* what) {
  QuadratureResult r = integrate_panels(f, a, b, panels);
  double scale = std::max(1.0, std::abs(r.value));
  if (!std::isfinite(r.value) || r.error > kQuadratureLimit * scale)
    throw Error(ErrorCode::QuadratureFailure, std::string(what) + ": achieved error " + std::to_string(r.error));
  return r;
}

inline int panel_count(const TestFunction& g) {
  double feature = g.kind() == TestKind::Gaussian ? g.sigma() : g.support() / 8;
  return std::clamp(static_cast<int>(std::ceil(2 * g.support() / feature)), 16, 400);
}

}  // namespace detail

struct MellinValue {
  std::complex<double> value;
  double error = 0.0;
};

/// ĥ(z) = ∫_{-T}^{T} g(t) e^{zt} dt.
inline MellinValue mellin_hat(const TestFunction& g, std::complex<double> z) {
  if (std::abs(z.real()) > 2.0) throw Error(ErrorCode::InvalidArgument, "|Re z| must be at most 2");
  if (g.kind() == TestKind::Zero) return {{0.0, 0.0}, 0.0};
  double a = z.real(), b = z.imag(), T = g.support();
  int panels = detail::panel_count(g) + static_cast<int>(std::abs(b) * T / 8);
  auto re = detail::checked([&](double t) { return g(t) * std::exp(a * t) * std::cos(b * t); }, -T, T, panels, "mellin_hat");
  QuadratureResult im{0.0, 0.0};
  if (b != 0.0)
    im = detail::checked([&](double t) { return g(t) * std::exp(a * t) * std::sin(b * t); }, -T, T, panels, "mellin_hat");
  return {{re.value, im.value}, re.error + im.error};
}

/// W_p; an exact finite sum since g vanishes beyond T.
inline double local_term_finite(const TestFunction& g, const Integer& p) {
  require_prime(p);
  double pd = p.convert_to<double>();
  double lp = std::log(pd);
  CompensatedSum s;
  for (int m = 1; m * lp <= g.support(); ++m) {
    double t = m * lp;
    s.add(lp * (g(t) + std::pow(pd, -m) * g(-t)));
  }
  return s.value();
}

struct ArchimedeanTerm {
  double value = 0.0;
  double error = 0.0;
};

/// W_∞ by singularity subtraction: the 1/u pole is removed with the weight
/// e^{-2u}/u, whose tail beyond T is g(0)·E_1(2T).
inline ArchimedeanTerm local_term_arch(const TestFunction& g) {
  if (g.kind() == TestKind::Zero) return {};
  double g0 = g(0.0);
  auto kernel = [&](double u) {
    return (g(u) * std::exp(u) + g(-u)) / (2 * std::sinh(u)) - g0 * std::exp(-2 * u) / u;
  };
  auto r = detail::checked(kernel, 0.0, g.support(), detail::panel_count(g), "local_term_arch");
  double tail = g0 * boost::math::expint(1, 2 * g.support());
  return {g0 * std::log(std::numbers::pi) + r.value - tail, r.error};
}

/// W_∞ as the symmetric limit lim_{ε→0} [∫_ε^T K₀ + g(0) log ε] + g(0)(log 2π + γ_E),
/// K₀ the unsubtracted kernel, extrapolated in ε by Richardson.
inline ArchimedeanTerm local_term_arch_limit(const TestFunction& g, double eps0 = 1e-3, int levels = 6) {
  if (g.kind() == TestKind::Zero) return {};
  double g0 = g(0.0);
  auto kernel = [&](double u) { return (g(u) * std::exp(u) + g(-u)) / (2 * std::sinh(u)); };
  int panels = detail::panel_count(g);
  auto truncated = [&](double eps) {
    // Geometric panels resolve the 1/u growth near ε.
    CompensatedSum s;
    double lo = eps;
    while (lo < eps0) {
      s.add(detail::checked(kernel, lo, 2 * lo, 1, "local_term_arch_limit").value);
      lo *= 2;
    }
    s.add(detail::checked(kernel, lo, g.support(), panels, "local_term_arch_limit").value);
    return s.value() + g0 * std::log(eps);
  };
  std::vector<double> table;
  for (int j = 0; j < levels; ++j) table.push_back(truncated(eps0 / std::ldexp(1.0, j)));
  double last_step = 0.0;
  for (int k = 1; k < levels; ++k) {
    double factor = std::ldexp(1.0, k);
    for (int j = levels - 1; j >= k; --j) {
      double next = (factor * table[j] - table[j - 1]) / (factor - 1);
      if (j == levels - 1) last_step = std::abs(next - table[j]);
      table[j] = next;
    }
  }
  return {table.back() + g0 * (std::log(2 * std::numbers::pi) + std::numbers::egamma), last_step};
}

/// Ordinates γ of the nontrivial zeros 1/2 + iγ, ascending.
class ZeroTable {
 public:
  static ZeroTable make(std::vector<double> ordinates, std::string provenance = {}) {
    for (std::size_t i = 0; i < ordinates.size(); ++i) {
      if (!(ordinates[i] > 0)) throw Error(ErrorCode::ParseError, "zero ordinates must be positive");
      if (i > 0 && !(ordinates[i] > ordinates[i - 1])) throw Error(ErrorCode::ParseError, "zero ordinates must increase");
    }
    ZeroTable z;
    z.ordinates_ = std::move(ordinates);
    z.provenance_ = std::move(provenance);
    return z;
  }

  /// One ordinate per line; lines starting with '#' are provenance notes.
  static ZeroTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open zero table " + path);
    std::vector<double> values;
    std::string line, provenance;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') {
        if (!provenance.empty()) provenance += '\n';
        provenance += line.substr(line.find_first_not_of("# \t", first) == std::string::npos
                                      ? line.size()
                                      : line.find_first_not_of("# \t", first));
        continue;
      }
      try {
        std::size_t used = 0;
        values.push_back(std::stod(line.substr(first), &used));
        if (line.find_first_not_of(" \t\r", first + used) != std::string::npos) throw std::invalid_argument(line);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": not a number");
      }
    }
    return make(std::move(values), std::move(provenance));
  }

  const std::vector<double>& ordinates() const { return ordinates_; }
  std::size_t count() const { return ordinates_.size(); }
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<double> ordinates_;
  std::string provenance_;
};

struct SpectralSide {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// ||φ''||₁ for φ(t) = g(t) e^{t/2}, by central differences on a fine grid.
inline double second_derivative_l1(const TestFunction& g) {
  double T = g.support();
  double feature = g.kind() == TestKind::Gaussian ? std::min(g.sigma(), T) : T / 8;
  int steps = std::clamp(static_cast<int>(std::ceil(2 * T / (feature / 200))), 20000, 400000);
  double h = 2 * T / steps;
  auto phi = [&](double t) { return g(t) * std::exp(t / 2); };
  CompensatedSum s;
  for (int i = 0; i <= steps; ++i) {
    double t = -T + i * h;
    double d2 = (phi(t + h) - 2 * phi(t) + phi(t - h)) / (h * h);
    s.add(std::abs(d2) * ((i == 0 || i == steps) ? h / 2 : h));
  }
  return s.value();
}

/// Bound on Σ_{γ > a} 2|ĥ(1/2 + iγ)| using |ĥ(1/2 + iγ)| <= ||φ''||₁/γ² and
/// N(γ) = (γ/2π) log(γ/2πe) + R(γ), |R| <= 7/8 + 0.112 log γ + 0.278 log log γ + 2.51 + 0.2/γ.
inline double zero_tail_bound(double a, double phi2_l1) {
  if (phi2_l1 == 0.0) return 0.0;
  auto remainder = [](double t) {
    return 0.875 + 0.112 * std::log(t) + 0.278 * std::log(std::log(t)) + 2.51 + 0.2 / t;
  };
  double density_part = phi2_l1 / std::numbers::pi * (std::log(a / (2 * std::numbers::pi)) + 1) / a;
  // ∫_a^∞ R(γ)·|f'(γ)| dγ with f = 2A/γ²; substitute γ = a/s.
  auto r = detail::checked([&](double s) { return remainder(a / s) * s; }, 0.0, 1.0, 8, "zero_tail_bound");
  double slope_part = 4 * phi2_l1 / (a * a) * r.value;
  double boundary = 2 * phi2_l1 / (a * a) * remainder(a);
  return density_part + slope_part + boundary;
}

inline SpectralSide spectral_side(const TestFunction& g, const ZeroTable& zeros, std::size_t n) {
  if (n > zeros.count())
    throw Error(ErrorCode::InsufficientZeros,
                "requested " + std::to_string(n) + " zeros, table has " + std::to_string(zeros.count()));
  if (g.kind() == TestKind::Zero) return {};
  CompensatedSum s;
  s.add(mellin_hat(g, 0.0).value.real());
  s.add(mellin_hat(g, 1.0).value.real());
  for (std::size_t k = 0; k < n; ++k) s.add(-2 * mellin_hat(g, {0.5, zeros.ordinates()[k]}).value.real());
  double a = n == 0 ? 14.0 : zeros.ordinates()[n - 1];
  return {s.value(), zero_tail_bound(a, second_derivative_l1(g))};
}

struct BalanceReport {
  double spectral_side = 0.0;
  double geometric_side = 0.0;
  std::map<std::string, double> per_place;  ///< "inf" and decimal primes
  double residual = 0.0;
  std::size_t zeros_used = 0;
  double tail_bound = 0.0;
};

inline std::vector<Integer> primes_up_to(double log_bound) {
  std::vector<Integer> out;
  for (long p = 2; std::log(static_cast<double>(p)) <= log_bound; ++p)
    if (is_prime(Integer(p))) out.emplace_back(p);
  return out;
}

inline BalanceReport balance(const TestFunction& g, const ZeroTable& zeros, std::size_t n) {
  BalanceReport r;
  SpectralSide spec = spectral_side(g, zeros, n);
  r.spectral_side = spec.value;
  r.tail_bound = spec.tail_bound;
  r.zeros_used = n;
  CompensatedSum geo;
  double arch = local_term_arch(g).value;
  r.per_place["inf"] = arch;
  geo.add(arch);
  for (const auto& p : primes_up_to(g.support())) {
    double w = local_term_finite(g, p);
    r.per_place[p.str()] = w;
    geo.add(w);
  }
  r.geometric_side = geo.value();
  r.residual = std::abs(r.spectral_side - r.geometric_side);
  return r;
}

struct ResidualPoint {
  std::size_t zeros_used = 0;
  double residual = 0.0;
  double tail_bound = 0.0;
};

/// Residual of the balance as a function of the number of zeros, 0..n.
inline std::vector<ResidualPoint> residual_curve(const TestFunction& g, const ZeroTable& zeros, std::size_t n) {
  BalanceReport full = balance(g, zeros, n);
  double phi2 = second_derivative_l1(g);
  std::vector<ResidualPoint> out;
  CompensatedSum s;
  if (g.kind() != TestKind::Zero) {
    s.add(mellin_hat(g, 0.0).value.real());
    s.add(mellin_hat(g, 1.0).value.real());
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0 && g.kind() != TestKind::Zero) s.add(-2 * mellin_hat(g, {0.5, zeros.ordinates()[k - 1]}).value.real());
    double a = k == 0 ? 14.0 : zeros.ordinates()[k - 1];
    out.push_back({k, std::abs(s.value() - full.geometric_side), zero_tail_bound(a, phi2)});
  }
  return out;
}

struct Archimedean {};
using Place = std::variant<Integer, Archimedean>;

inline std::string place_name(const Place& v) {
  return std::holds_alternative<Archimedean>(v) ? "inf" : std::get<Integer>(v).str();
}

/// |x|_v for x ∈ Q^×.
inline Rational absolute_value(const Rational& x, const Place& v) {
  if (std::holds_alternative<Archimedean>(v)) return abs(x);
  const Integer& p = std::get<Integer>(v);
  require_prime(p);
  return rpow(p, -valuation(x, p));
}

/// 1 / |1 - u|_v, exact at every place.
inline Rational dist_trace(const Rational& u, const Place& v) {
  if (u == 1) throw Error(ErrorCode::FixedPointSingular, "u = 1 is a fixed point");
  return 1 / absolute_value(1 - u, v);
}

/// The places where |x|_v != 1, together with ∞.
inline std::vector<Place> relevant_places(const Rational& x) {
  std::vector<Place> out{Archimedean{}};
  for (const auto& p : prime_support(x)) out.emplace_back(p);
  return out;
}

struct SemilocalTrace {
  double divergent = 0.0;
  double finite = 0.0;
};

/// 2 g(0) log λ and Σ_{v ∈ S} W_v.
inline SemilocalTrace semilocal_rhs(const TestFunction& g, const std::vector<Place>& places, double lambda) {
  if (!(lambda > 0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  bool has_arch = std::any_of(places.begin(), places.end(),
                              [](const Place& v) { return std::holds_alternative<Archimedean>(v); });
  if (!has_arch) throw Error(ErrorCode::InvalidArgument, "the place set must contain inf");
  SemilocalTrace out{2 * g(0.0) * std::log(lambda), 0.0};
  CompensatedSum s;
  std::set<std::string> seen;
  for (const auto& v : places) {
    if (!seen.insert(place_name(v)).second) continue;
    s.add(std::holds_alternative<Archimedean>(v) ? local_term_arch(g).value : local_term_finite(g, std::get<Integer>(v)));
  }
  out.finite = s.value();
  return out;
}

/// ζ(1/2 + it) by Euler–Maclaurin with about t terms.
inline std::complex<double> zeta_critical(double t) {
  using C = std::complex<double>;
  C s(0.5, t);
  int n = std::max(20, static_cast<int>(std::ceil(t)) + 10);
  C sum = 0.0;
  for (int k = n - 1; k >= 1; --k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  double ln = std::log(static_cast<double>(n));
  C npow = std::exp(-s * ln);
  sum += npow * static_cast<double>(n) / (s - 1.0) + npow / 2.0;
  C rising = s;                                 // s(s+1)...(s+2j-2)
  C power = npow / static_cast<double>(n);      // n^{-s-2j+1}
  double factorial = 2.0;                       // (2j)!
  for (int j = 1; j <= 10; ++j) {
    sum += boost::math::bernoulli_b2n<double>(j) / factorial * rising * power;
    rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    power /= static_cast<double>(n) * n;
    factorial *= (2.0 * j + 1) * (2.0 * j + 2);
  }
  return sum;
}

struct ZeroCertificate {
  double ordinate = 0.0;
  double modulus = 0.0;  ///< |ζ(1/2 + iγ)|
  bool certified = false;
};

/// A zero lies within δ of γ when ζ(1/2 + it) turns through a sign change of
/// the Hardy function: Re(ζ(γ-δ) · conj ζ(γ+δ)) < 0.
inline ZeroCertificate certify_zero(double gamma, double delta = 1e-8) {
  auto lo = zeta_critical(gamma - delta), hi = zeta_critical(gamma + delta);
  return {gamma, std::abs(zeta_critical(gamma)), (lo * std::conj(hi)).real() < 0};
}

inline std::vector<ZeroCertificate> verify_zeros(const ZeroTable& zeros, double delta = 1e-8) {
  std::vector<ZeroCertificate> out;
  for (double g : zeros.ordinates()) out.push_back(certify_zero(g, delta));
  return out;
}

}  // namespace picmonoid
