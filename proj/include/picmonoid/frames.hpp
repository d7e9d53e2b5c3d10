#pragma once

// Framed divisors (L, ξ, τ) and their dual roots.
//
// A frame is stored through its adelic multiplier: ξ(x) = a_f·x and
// τ(x) = tau·x. The group L is the one cut out by a_f, so the frame is a
// generator of Hom(L, Ẑ) by construction. The root ρ = ξ^∨ is evaluated on
// demand: ⟨ρ(1/n), x⟩ = ξ(x) mod n.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "picmonoid/adeles.hpp"
#include "picmonoid/arith.hpp"
#include "picmonoid/divisors.hpp"

namespace picmonoid {

class Frame {
 public:
  /// The trivial frame on Z: multiplier 1, tau 1.
  Frame() = default;

  Frame(FiniteAdele multiplier, Rational tau)
      : multiplier_(std::move(multiplier)), divisor_(adele_to_divisor(multiplier_)), tau_(std::move(tau)) {}

  const FiniteAdele& multiplier() const { return multiplier_; }
  const ArithmeticDivisor& divisor() const { return divisor_; }
  const Rational& tau() const { return tau_; }
  PrimeSet s_locus() const { return infinite_locus(divisor_); }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  FiniteAdele multiplier_;
  ArithmeticDivisor divisor_;
  Rational tau_ = 1;
};

/// Tightness: v_p(α_p) = n_p at finite coefficients, α_p = 0 where n_p = ∞.
/// Primes without an α entry carry the unit multiplier.
inline bool frame_check_tight(const std::map<Integer, TruncatedPadic>& alphas, const ArithmeticDivisor& d) {
  for (const auto& [p, n] : d.explicit_entries())
    if (!alphas.count(p)) throw Error(ErrorCode::MissingPrime, "no multiplier given at " + p.str());
  if (d.default_is_inf()) return false;  // infinitely many primes would need a zero multiplier
  for (const auto& [p, alpha] : alphas) {
    ExtInt n = d.coefficient(p);
    if (n.is_inf() ? !alpha.is_zero() : alpha.valuation() != n) return false;
  }
  return true;
}

inline Frame frame_tensor(const Frame& a, const Frame& b) {
  return Frame(a.multiplier() * b.multiplier(), a.tau() * b.tau());
}

namespace detail {

/// (a_p · x) mod p^e for x ∈ L with v_p(a_p x) >= 0.
inline Integer local_frame_residue(const FiniteAdele& multiplier, const Integer& p, int e, const Rational& x) {
  if (x == 0) return 0;
  Integer pe = ipow(p, e);
  if (auto comp = multiplier.explicit_component(p)) {
    if (comp->is_zero()) return 0;
    long w = comp->finite_valuation() + valuation(x, p);
    if (w < 0) throw Error(ErrorCode::NotInGroup, "frame value of " + to_string(x) + " is not integral at " + p.str());
    if (w >= e) return 0;
    int digits = e - static_cast<int>(w);
    if (comp->precision() < digits)
      throw Error(ErrorCode::InsufficientPrecision, "prime " + p.str() + " needs " + std::to_string(digits) +
                                                        " digits, have " + std::to_string(comp->precision()));
    Integer m = ipow(p, digits);
    Integer u = mod(comp->unit() * rational_mod(strip_prime(x, p), m), m);
    return mod(ipow(p, w) * u, pe);
  }
  Rational y = multiplier.cofactor() * x;
  long w = valuation(y, p);
  if (w < 0) throw Error(ErrorCode::NotInGroup, "frame value of " + to_string(x) + " is not integral at " + p.str());
  if (w >= e) return 0;
  return rational_mod(y, pe);
}

}  // namespace detail

/// ⟨ξ^∨(1/n), x⟩ for a multiplier a_f on the group L(group), as a residue mod n.
/// Works for non-tight multipliers too, as long as a_f maps L into Ẑ.
inline Integer frame_value_mod(const FiniteAdele& multiplier, const ArithmeticDivisor& group, const Integer& n,
                               const Rational& x) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "level must be positive");
  if (!sections_contains(group, x)) throw Error(ErrorCode::NotInGroup, to_string(x) + " is not in L");
  if (n == 1) return 0;
  std::vector<std::pair<Integer, Integer>> residues;
  for (const auto& [p, e] : factor(n))
    residues.emplace_back(detail::local_frame_residue(multiplier, p, static_cast<int>(e), x), ipow(p, e));
  return crt(residues).first;
}

/// (ξ(x) mod n) / n ∈ Q/Z.
inline QmodZ root_eval(const Frame& f, const Integer& n, const Rational& x) {
  return QmodZ(Rational(frame_value_mod(f.multiplier(), f.divisor(), n, x), n));
}

/// The product root at level n agrees with the dual of the product frame:
/// ξ(x⊗y) mod n = (ξ₁(x) mod n)(ξ₂(y) mod n) mod n.
inline bool root_tensor_check(const Frame& f1, const Frame& f2, const Integer& n, const Rational& x,
                              const Rational& y) {
  QmodZ lhs = root_eval(frame_tensor(f1, f2), n, x * y);
  Integer u = numerator(root_eval(f1, n, x).value() * n);
  Integer v = numerator(root_eval(f2, n, y).value() * n);
  return lhs == QmodZ(Rational(mod(u * v, n), n));
}

/// Vanishing on singularities: if p ∈ S, ρ(1/p^k) kills every sample.
inline bool root_vanishing(const Frame& f, const Integer& p, int k, const std::vector<Rational>& samples) {
  require_prime(p);
  if (!f.s_locus().contains(p)) return true;
  Integer level = ipow(p, k);
  for (const auto& x : samples)
    if (root_eval(f, level, x) != QmodZ()) return false;
  return true;
}

/// Isomorphism on support at level p^k: x = p^{-n_p}·j, j = 0..p^k-1, hits
/// every residue mod p^k. Requires p outside the singular locus.
inline bool root_level_surjective(const FiniteAdele& multiplier, const ArithmeticDivisor& group, const Integer& p,
                                  int k) {
  require_prime(p);
  ExtInt n = group.coefficient(p);
  if (n.is_inf()) throw Error(ErrorCode::InvalidArgument, "prime " + p.str() + " is singular for L");
  Integer level = ipow(p, k);
  // p^{-n_p} times a p-unit that clears the other primes where L is smaller than Z
  Rational base = rpow(p, -to_long(n.value()));
  for (const auto& [q, m] : group.explicit_entries())
    if (q != p && m.is_finite() && m.value() < 0) base *= rpow(q, -to_long(m.value()));
  std::set<Integer> hit;
  for (Integer j = 0; j < level; ++j) hit.insert(frame_value_mod(multiplier, group, level, base * j));
  return Integer(hit.size()) == level;
}

/// Tor(L^∨) ≅ ⊕_{p ∉ S} Q_p / a_p Z_p.
struct DualTorsionDescriptor {
  PrimeSet support_primes;
  std::map<Integer, ExtInt> local_shift;  ///< v_p(a_p) at explicit primes; 0 elsewhere

  friend bool operator==(const DualTorsionDescriptor&, const DualTorsionDescriptor&) = default;
};

inline DualTorsionDescriptor dual_torsion(const Frame& f) {
  DualTorsionDescriptor out{f.s_locus().complement(), {}};
  for (const auto& [p, n] : f.divisor().explicit_entries())
    if (n.is_finite()) out.local_shift.emplace(p, n);
  return out;
}

/// Order of the image of x in Q_p / a_p Z_p.
inline Integer torsion_element_order(const DualTorsionDescriptor& d, const Integer& p, const Rational& x) {
  if (!d.support_primes.contains(p)) throw Error(ErrorCode::InvalidArgument, "prime " + p.str() + " is not in the support");
  if (x == 0) return 1;
  auto it = d.local_shift.find(p);
  long shift = it == d.local_shift.end() ? 0 : to_long(it->second.value());
  long gap = valuation(x, p) - shift;
  return gap >= 0 ? Integer(1) : ipow(p, -gap);
}

/// Isomorphism of framed divisors: some q ∈ Q^× with a_f' = q·a_f and
/// τ' = q·τ. The cofactors force q = c'/c; explicit components are then
/// compared to the common precision, which must reach `certify_digits`.
inline bool pic_framed_class(const Frame& f1, const Frame& f2, int certify_digits = 1) {
  const FiniteAdele& a = f1.multiplier();
  const FiniteAdele& b = f2.multiplier();
  Rational q = b.cofactor() / a.cofactor();
  if (f2.tau() != q * f1.tau()) return false;
  std::set<Integer> primes;
  for (const auto& [p, x] : a.components()) primes.insert(p);
  for (const auto& [p, x] : b.components()) primes.insert(p);
  for (const auto& p : primes) {
    auto xa = a.explicit_component(p);
    auto xb = b.explicit_component(p);
    if (!xa && !xb) continue;
    // An exact side is embedded at the other side's precision.
    TruncatedPadic lhs = xa ? xa->scaled(q) : TruncatedPadic::from_rational(a.cofactor() * q, p, xb->is_zero() ? 1 : xb->precision());
    TruncatedPadic rhs = xb ? *xb : TruncatedPadic::from_rational(b.cofactor(), p, lhs.is_zero() ? 1 : lhs.precision());
    if (lhs.is_zero() || rhs.is_zero()) {
      if (lhs.is_zero() != rhs.is_zero()) return false;
      continue;
    }
    if (lhs.valuation() != rhs.valuation()) return false;
    int digits = std::min(lhs.precision(), rhs.precision());
    if (digits < certify_digits)
      throw Error(ErrorCode::InsufficientPrecision, "only " + std::to_string(digits) + " digits comparable at " + p.str());
    if (!lhs.agrees_with(rhs, digits)) return false;
  }
  return true;
}

}  // namespace picmonoid
