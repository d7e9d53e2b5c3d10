#pragma once

// Finite adeles and adeles over Q with per-prime precision tracking.
//
// A FiniteAdele stores finitely many truncated components plus an exact
// rational cofactor c giving the component at every other prime. c must be
// a unit at those primes, so its prime support lies among the explicit
// primes. The common case c = 1 is "1 almost everywhere"; general c lets the
// diagonal image of Q and Q^×-translates stay exact.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "picmonoid/arith.hpp"
#include "picmonoid/divisors.hpp"
#include "picmonoid/padic.hpp"
#include "picmonoid/picard.hpp"

namespace picmonoid {

class FiniteAdele {
 public:
  using Components = std::map<Integer, TruncatedPadic>;

  /// The unit adele.
  FiniteAdele() = default;

  static FiniteAdele make(Components components, Rational cofactor = 1) {
    for (const auto& [p, x] : components)
      if (x.prime() != p) throw Error(ErrorCode::InvalidArgument, "component keyed by " + p.str() + " lives over " + x.prime().str());
    if (cofactor == 0) throw Error(ErrorCode::InvalidArgument, "cofactor must be nonzero");
    for (const auto& [p, e] : factor(cofactor))
      if (!components.count(p))
        throw Error(ErrorCode::InvalidArgument, "cofactor " + to_string(cofactor) + " is not a unit at " + p.str());
    FiniteAdele a;
    a.components_ = std::move(components);
    a.cofactor_ = std::move(cofactor);
    return a;
  }

  /// Diagonal image of q ∈ Q^×, exact away from the primes of q.
  static FiniteAdele diagonal(const Rational& q, int precision) {
    if (q == 0) throw Error(ErrorCode::ZeroInput, "diagonal image of 0 is zero at every prime");
    Components comps;
    for (const auto& p : prime_support(q)) comps.emplace(p, TruncatedPadic::from_rational(q, p, precision));
    return make(std::move(comps), q);
  }

  /// e_S: exact zero on S, 1 elsewhere.
  static FiniteAdele idempotent(const std::set<Integer>& s) {
    Components comps;
    for (const auto& p : s) comps.emplace(p, TruncatedPadic::zero(p));
    return make(std::move(comps));
  }

  const Components& components() const { return components_; }
  const Rational& cofactor() const { return cofactor_; }

  std::optional<TruncatedPadic> explicit_component(const Integer& p) const {
    auto it = components_.find(p);
    if (it == components_.end()) return std::nullopt;
    return it->second;
  }

  /// Component at p, with `precision` digits when p is not explicit.
  TruncatedPadic component(const Integer& p, int precision) const {
    if (auto c = explicit_component(p)) return *c;
    return TruncatedPadic::from_rational(cofactor_, p, precision);
  }

  /// r · a for r ∈ Q^×. Primes of r that were not explicit become explicit
  /// with `precision` digits.
  FiniteAdele scaled(const Rational& r, int precision) const {
    if (r == 0) throw Error(ErrorCode::ZeroInput, "scaling by 0");
    Components comps;
    for (const auto& [p, x] : components_) comps.emplace(p, x.scaled(r));
    for (const auto& p : prime_support(r))
      if (!comps.count(p)) comps.emplace(p, TruncatedPadic::from_rational(cofactor_ * r, p, precision));
    return make(std::move(comps), cofactor_ * r);
  }

  friend FiniteAdele operator*(const FiniteAdele& a, const FiniteAdele& b) {
    Components comps;
    for (const auto& [p, x] : a.components_) {
      auto y = b.explicit_component(p);
      comps.emplace(p, y ? x.times(*y) : x.scaled(b.cofactor_));
    }
    for (const auto& [p, y] : b.components_)
      if (!comps.count(p)) comps.emplace(p, y.scaled(a.cofactor_));
    return make(std::move(comps), a.cofactor_ * b.cofactor_);
  }

  friend bool operator==(const FiniteAdele&, const FiniteAdele&) = default;

 private:
  Components components_;
  Rational cofactor_ = 1;
};

struct Adele {
  FiniteAdele finite;
  Rational infinite = 1;
  std::optional<double> real_lift;

  friend bool operator==(const Adele&, const Adele&) = default;
};

/// An element of Q/Z, kept reduced in [0, 1).
class QmodZ {
 public:
  QmodZ() = default;
  explicit QmodZ(const Rational& q) : value_(q - floor_div(q)) {}

  const Rational& value() const { return value_; }

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b) { return QmodZ(a.value_ + b.value_); }
  friend QmodZ operator*(const Integer& k, const QmodZ& a) { return QmodZ(a.value_ * k); }
  friend bool operator==(const QmodZ&, const QmodZ&) = default;

 private:
  Rational value_ = 0;
};

inline TruncatedPadic padic_from_rational(const Rational& x, const Integer& p, int precision) {
  return TruncatedPadic::from_rational(x, p, precision);
}

/// Componentwise product; the archimedean part is multiplied exactly.
inline Adele adele_multiply(const Adele& a, const Adele& b) {
  Adele out{a.finite * b.finite, a.infinite * b.infinite, std::nullopt};
  if (a.real_lift && b.real_lift) out.real_lift = to_double(out.infinite);
  return out;
}

/// Φ(a) = (v_p(a_p))_p.
inline ArithmeticDivisor adele_to_divisor(const FiniteAdele& a) {
  ArithmeticDivisor::Entries entries;
  for (const auto& [p, x] : a.components()) entries.emplace(p, x.valuation());
  return ArithmeticDivisor::make(std::move(entries));
}

/// q ∈ {q : a q ∈ Ẑ}.
inline bool subgroup_membership(const FiniteAdele& a, const Rational& q) {
  if (q == 0) return true;
  for (const auto& [p, x] : a.components()) {
    if (x.is_zero()) continue;
    if (x.finite_valuation() + valuation(q, p) < 0) return false;
  }
  Integer den = denominator(q);
  for (const auto& [p, x] : a.components())
    while (den % p == 0) den /= p;
  return den == 1;
}

struct YqReduction {
  Adele reduced;
  Rational multiplier;  ///< reduced = multiplier · a, up to Ẑ^×
};

/// Canonical representative of the Q^×-orbit up to Ẑ^×: every finite-valuation
/// explicit component becomes a unit, a_∞ becomes positive and free of
/// primes in the zero locus.
inline YqReduction yq_reduce(const Adele& a) {
  Rational r = 1;
  std::set<Integer> zeros;
  for (const auto& [p, x] : a.finite.components()) {
    if (x.is_zero()) zeros.insert(p);
    else r *= rpow(p, -x.finite_valuation());
  }
  if (a.infinite != 0) {
    if (a.infinite < 0) r = -r;
    Rational arch = r * a.infinite;
    r *= detail::reduce_scale(arch, PrimeSet::of(zeros)) / arch;
  }
  // r involves only explicit primes, so no new components appear.
  Adele out{a.finite.scaled(r, 1), r * a.infinite, std::nullopt};
  if (a.real_lift) out.real_lift = to_double(out.infinite);
  return {std::move(out), r};
}

/// The class of Λ(a) = ({q : a_f q ∈ Ẑ}, |a_∞|·|·|) in Pic(Spec Z̄).
inline PicClass xq_class(const Adele& a) { return pic_from_data(adele_to_divisor(a.finite), abs(a.infinite)); }

namespace detail {

/// {y}_p for y = p^w · u with w < 0, u a p-unit known modulo p^digits.
inline Rational padic_fractional_part(const Integer& p, long w, const Integer& unit) {
  Integer m = ipow(p, -w);
  return Rational(mod(unit, m), m);
}

}  // namespace detail

/// ψ(a)(q) = Σ_p {q a_p}_p mod 1.
inline QmodZ psi_pair(const FiniteAdele& a, const Rational& q) {
  if (q == 0) return QmodZ();
  Rational total = 0;
  for (const auto& [p, x] : a.components()) {
    if (x.is_zero()) continue;
    long w = x.finite_valuation() + valuation(q, p);
    if (w >= 0) continue;
    if (x.precision() < -w)
      throw Error(ErrorCode::InsufficientPrecision,
                  "prime " + p.str() + " needs " + std::to_string(-w) + " digits, have " + std::to_string(x.precision()));
    Integer m = ipow(p, -w);
    total += detail::padic_fractional_part(p, w, x.unit() * rational_mod(strip_prime(q, p), m));
  }
  // Non-explicit primes carry the exact unit cofactor.
  Rational y = q * a.cofactor();
  Integer den = denominator(y);
  for (const auto& [p, x] : a.components())
    while (den % p == 0) den /= p;
  if (den != 1) {
    for (const auto& [p, e] : factor(den)) {
      long w = valuation(y, p);
      Integer m = ipow(p, -w);
      total += detail::padic_fractional_part(p, w, rational_mod(strip_prime(y, p), m));
    }
  }
  return QmodZ(total);
}

}  // namespace picmonoid
