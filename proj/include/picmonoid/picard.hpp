#pragma once

// The metrized Picard monoid Pic(Spec Z̄): classes of pairs (L, λ|·|) with
// L ⊂ Q of rank 1 and λ >= 0, under tensor product. Every class has the
// canonical form (S, scale) where S is the set of primes at which L is
// divisible and scale is reduced modulo the S-units, so equality of classes
// is structural equality of canonical forms.

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "picmonoid/arith.hpp"
#include "picmonoid/divisors.hpp"
#include "picmonoid/prime_set.hpp"

namespace picmonoid {

namespace detail {

/// Reduces a nonnegative rational modulo the multiplicative group ⟨p : p ∈ S⟩.
inline Rational reduce_scale(const Rational& scale, const PrimeSet& s) {
  if (scale == 0) return 0;
  if (s.finite()) {
    Rational out = scale;
    for (const auto& p : s.members()) out = strip_prime(out, p);
    return out;
  }
  // S = all primes except T: only the T-part of the scale survives.
  Rational out = 1;
  for (const auto& p : s.members()) out *= rpow(p, valuation(scale, p));
  return out;
}

}  // namespace detail

class PicClass {
 public:
  /// The trivial class (Z, |·|).
  PicClass() = default;

  static PicClass make(PrimeSet s_locus, const Rational& scale) {
    if (scale < 0) throw Error(ErrorCode::NegativeScale, "scale " + to_string(scale) + " is negative");
    PicClass c;
    c.scale_ = detail::reduce_scale(scale, s_locus);
    c.s_locus_ = std::move(s_locus);
    return c;
  }

  const PrimeSet& s_locus() const { return s_locus_; }
  const Rational& scale() const { return scale_; }
  bool degenerate() const { return scale_ == 0; }

  friend bool operator==(const PicClass&, const PicClass&) = default;

 private:
  PrimeSet s_locus_;
  Rational scale_ = 1;
};

/// Class of (L(D), λ|·|). L(D) = g·Z_S with g = 1/witness, so the class is
/// (S, λ / witness).
inline PicClass pic_from_data(const ArithmeticDivisor& d, const Rational& lambda) {
  if (lambda < 0) throw Error(ErrorCode::NegativeScale, "lambda " + to_string(lambda) + " is negative");
  ClassNormalForm nf = class_normalize(d);
  return PicClass::make(std::move(nf.s), lambda / nf.witness);
}

inline PicClass pic_product(const PicClass& a, const PicClass& b) {
  return PicClass::make(set_union(a.s_locus(), b.s_locus()), a.scale() * b.scale());
}

inline PicClass operator*(const PicClass& a, const PicClass& b) { return pic_product(a, b); }

inline bool pic_equal(const PicClass& a, const PicClass& b) { return a == b; }

/// x lies in the full value spectrum {λ|y| : y ∈ Z_S}.
inline bool spectrum_contains(const PicClass& c, const Rational& x) {
  if (x < 0) return false;
  if (x == 0) return true;
  if (c.degenerate()) return false;
  Rational y = x / c.scale();
  if (!c.s_locus().finite()) {
    Integer den = denominator(y);
    for (const auto& p : c.s_locus().members())
      if (den % p == 0) return false;
    return true;
  }
  return denominator(detail::reduce_scale(y, c.s_locus())) == 1;
}

/// The part of the value spectrum below `bound` with denominators capped
/// at p^{caps[p]} for p ∈ S. That set is the progression step·{0, 1, ..., count}
/// with step = scale / ∏ p^{caps[p]}; it is stored in that form.
class SpectrumSample {
 public:
  SpectrumSample(Rational step, Integer count, Rational bound, std::map<Integer, int> caps)
      : step_(std::move(step)), count_(std::move(count)), bound_(std::move(bound)), caps_(std::move(caps)) {}

  const Rational& step() const { return step_; }
  /// Number of nonzero elements.
  const Integer& count() const { return count_; }
  const Rational& bound() const { return bound_; }
  const std::map<Integer, int>& caps() const { return caps_; }

  std::vector<Rational> elements() const {
    std::vector<Rational> out;
    out.reserve(count_.convert_to<std::size_t>() + 1);
    for (Integer j = 0; j <= count_; ++j) out.push_back(step_ * j);
    return out;
  }

  bool contains(const Rational& x) const {
    if (x == 0) return true;
    if (count_ == 0 || x < 0 || x > bound_) return false;
    Rational j = x / step_;
    return denominator(j) == 1;
  }

  /// Set equality of the sampled elements.
  friend bool same_elements(const SpectrumSample& a, const SpectrumSample& b) {
    if (a.count_ == 0 || b.count_ == 0) return a.count_ == b.count_;
    return a.count_ == b.count_ && a.step_ == b.step_;
  }

 private:
  Rational step_;
  Integer count_;
  Rational bound_;
  std::map<Integer, int> caps_;
};

inline SpectrumSample value_spectrum_sample(const PicClass& c, const Rational& bound,
                                            const std::map<Integer, int>& caps) {
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "negative spectrum bound");
  if (c.degenerate()) return SpectrumSample(0, 0, bound, caps);
  if (!c.s_locus().finite())
    throw Error(ErrorCode::MissingCap, "S is cofinite; denominators cannot be capped at infinitely many primes");
  Integer den = 1;
  for (const auto& p : c.s_locus().members()) {
    auto it = caps.find(p);
    if (it == caps.end()) throw Error(ErrorCode::MissingCap, "no denominator cap for prime " + p.str());
    if (it->second < 0) throw Error(ErrorCode::InvalidArgument, "negative cap for prime " + p.str());
    den *= ipow(p, it->second);
  }
  Rational step = c.scale() / den;
  return SpectrumSample(step, floor_div(bound / step), bound, caps);
}

enum class ArchFlag { Finite, Infinite };

/// A class of Jac(Spec Z̄) ≅ Pic(Spec Z) × {0, ∞}.
struct JacClass {
  PrimeSet s_locus;
  ArchFlag arch = ArchFlag::Finite;

  friend bool operator==(const JacClass&, const JacClass&) = default;
};

inline JacClass jac_project(const PicClass& c) {
  return {c.s_locus(), c.degenerate() ? ArchFlag::Infinite : ArchFlag::Finite};
}

inline JacClass jac_product(const JacClass& a, const JacClass& b) {
  bool inf = a.arch == ArchFlag::Infinite || b.arch == ArchFlag::Infinite;
  return {set_union(a.s_locus, b.s_locus), inf ? ArchFlag::Infinite : ArchFlag::Finite};
}

struct GenericPoint {};
struct FinitePrime {
  Integer p;
};
struct ArchimedeanPlace {};

/// A point of Spec Z̄ extended by its generic point.
using CurvePoint = std::variant<GenericPoint, FinitePrime, ArchimedeanPlace>;

/// η ↦ (Z, finite), p ↦ (Z[1/p], finite), ∞ ↦ (Z, infinite).
inline JacClass abel_jacobi(const CurvePoint& point) {
  if (std::holds_alternative<GenericPoint>(point)) return {};
  if (const auto* fp = std::get_if<FinitePrime>(&point)) return {PrimeSet::of({fp->p}), ArchFlag::Finite};
  return {PrimeSet(), ArchFlag::Infinite};
}

/// Θ(S) = Z_S, sending unions of prime sets to tensor products.
inline JacClass abel_jacobi_set(const PrimeSet& s) { return {s, ArchFlag::Finite}; }

/// Global sections of norm at most one: {x ∈ L(D) : λ|x| <= 1}.
/// L(D) = g·Z with g = ∏ p^{-n_p}, so the list is k·g for |k| <= 1/(λ g).
inline std::vector<Rational> unit_ball_sections(const ArithmeticDivisor& d, const Rational& lambda) {
  if (!d.all_finite())
    throw Error(ErrorCode::InfiniteType, "divisor has an infinite coefficient; the unit ball is infinite");
  if (lambda <= 0) throw Error(ErrorCode::ZeroScale, "lambda must be positive");
  Rational g = 1;
  for (const auto& [p, n] : d.explicit_entries()) g *= rpow(p, -to_long(n.value()));
  Integer k = floor_div(Rational(1) / (lambda * g));
  std::vector<Rational> out;
  for (Integer j = -k; j <= k; ++j) out.push_back(g * j);
  return out;
}

}  // namespace picmonoid
