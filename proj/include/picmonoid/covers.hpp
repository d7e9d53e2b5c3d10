#pragma once

// Finite abelian covers given by a quotient G = (Z/mZ)^× / K, Frobenius
// monodromy over the periodic orbits C_p, and the fiber groups over points
// of the base.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "picmonoid/arith.hpp"
#include "picmonoid/padic.hpp"
#include "picmonoid/picard.hpp"
#include "picmonoid/prime_set.hpp"

namespace picmonoid {

/// A coset of the kernel, named by its least residue.
struct CoverElement {
  std::int64_t representative = 1;
  friend auto operator<=>(const CoverElement&, const CoverElement&) = default;
};

class CoverSpec {
 public:
  static CoverSpec make(std::int64_t modulus, const std::vector<std::int64_t>& kernel_gens) {
    if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
    CoverSpec c;
    c.modulus_ = modulus;
    for (std::int64_t a = 0; a < modulus; ++a)
      if (std::gcd(a, modulus) == 1) c.units_.push_back(a);
    if (modulus == 1) c.units_ = {0};

    std::set<std::int64_t> kernel{c.reduce(1)};
    for (auto g : kernel_gens) {
      std::int64_t r = c.reduce(g);
      if (std::gcd(r, modulus) != 1 && modulus != 1)
        throw Error(ErrorCode::NonUnitGenerator, std::to_string(g) + " is not a unit mod " + std::to_string(modulus));
      kernel.insert(r);
    }
    // Close under multiplication; a finite submonoid of a group is a subgroup.
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<std::int64_t> current(kernel.begin(), kernel.end());
      for (auto a : current)
        for (auto b : current) grew |= kernel.insert(c.mul(a, b)).second;
    }
    c.kernel_ = std::move(kernel);

    for (auto u : c.units_) {
      if (c.coset_.count(u)) continue;
      std::int64_t rep = u;  // units_ is ascending, so the first hit is least
      c.reps_.push_back(rep);
      for (auto k : c.kernel_) c.coset_[c.mul(u, k)] = rep;
    }
    return c;
  }

  std::int64_t modulus() const { return modulus_; }
  const std::set<std::int64_t>& kernel() const { return kernel_; }
  std::size_t group_order() const { return reps_.size(); }
  std::size_t unit_count() const { return units_.size(); }
  const std::vector<std::int64_t>& representatives() const { return reps_; }

  std::int64_t reduce(std::int64_t a) const { return ((a % modulus_) + modulus_) % modulus_; }

  CoverElement element_of(std::int64_t unit) const {
    auto it = coset_.find(reduce(unit));
    if (it == coset_.end()) throw Error(ErrorCode::NonUnitGenerator, std::to_string(unit) + " is not a unit");
    return {it->second};
  }

  CoverElement multiply(CoverElement a, CoverElement b) const {
    return element_of(mul(a.representative, b.representative));
  }

  CoverElement identity() const { return element_of(1); }

  std::size_t order(CoverElement g) const {
    CoverElement e = identity(), x = g;
    std::size_t k = 1;
    while (x != e) {
      x = multiply(x, g);
      ++k;
    }
    return k;
  }

  /// The multiplication table of G indexed by position in representatives().
  std::vector<std::vector<std::size_t>> table() const {
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t i = 0; i < reps_.size(); ++i) index[reps_[i]] = i;
    std::vector<std::vector<std::size_t>> out(reps_.size(), std::vector<std::size_t>(reps_.size()));
    for (std::size_t i = 0; i < reps_.size(); ++i)
      for (std::size_t j = 0; j < reps_.size(); ++j) out[i][j] = index.at(multiply({reps_[i]}, {reps_[j]}).representative);
    return out;
  }

 private:
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % modulus_);
  }

  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> units_;
  std::set<std::int64_t> kernel_;
  std::vector<std::int64_t> reps_;
  std::map<std::int64_t, std::int64_t> coset_;
};

inline CoverSpec cover_from_character(std::int64_t modulus, const std::vector<std::int64_t>& kernel_gens) {
  return CoverSpec::make(modulus, kernel_gens);
}

/// Kronecker symbol (a/n) for n > 0.
inline int kronecker(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "kronecker symbol needs a positive lower argument");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    std::int64_t r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol for odd n.
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// The cover of Q(√d): conductor |D| with D the field discriminant, kernel
/// the residues a with (D/a) = 1.
inline CoverSpec quadratic_cover(std::int64_t d) {
  if (d == 0 || d == 1) throw Error(ErrorCode::InvalidArgument, "d must be a non-square");
  for (std::int64_t f = 2; f * f <= (d < 0 ? -d : d); ++f)
    if (d % (f * f) == 0) throw Error(ErrorCode::InvalidArgument, "d must be squarefree");
  std::int64_t disc = (((d % 4) + 4) % 4 == 1) ? d : 4 * d;
  std::int64_t m = disc < 0 ? -disc : disc;
  std::vector<std::int64_t> kernel;
  for (std::int64_t a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1 && kronecker(disc, a) == 1) kernel.push_back(a);
  return CoverSpec::make(m, kernel);
}

inline CoverElement frobenius(const CoverSpec& c, const Integer& p) {
  require_prime(p);
  if (c.modulus() % p == 0) throw Error(ErrorCode::Ramified, p.str() + " divides the modulus " + std::to_string(c.modulus()));
  return c.element_of(static_cast<std::int64_t>(mod(p, Integer(c.modulus()))));
}

struct FiberDecomposition {
  std::size_t components = 1;
  std::size_t degree = 1;
  friend bool operator==(const FiberDecomposition&, const FiberDecomposition&) = default;
};

inline FiberDecomposition fiber_decomposition(const CoverSpec& c, const Integer& p) {
  std::size_t degree = c.order(frobenius(c, p));
  return {c.group_order() / degree, degree};
}

struct RamifiedPlaces {
  PrimeSet primes;
  bool archimedean = true;  ///< always present; no finer invariant is computed
  friend bool operator==(const RamifiedPlaces&, const RamifiedPlaces&) = default;
};

/// p | m ramifies iff the inertia image {u ≡ 1 mod m/p^{v_p(m)}} is nontrivial in G.
inline RamifiedPlaces ramified_set(const CoverSpec& c) {
  std::set<Integer> out;
  std::int64_t m = c.modulus();
  for (const auto& [p, e] : factor(Integer(m))) {
    std::int64_t pe = static_cast<std::int64_t>(ipow(p, e));
    std::int64_t rest = m / pe;
    for (std::int64_t u = 1; u < m; u += rest) {
      if (u % rest != 1 % rest || std::gcd(u, m) != 1) continue;
      if (!c.kernel().count(u)) {
        out.insert(p);
        break;
      }
    }
  }
  return {PrimeSet::of(out), true};
}

/// A point of the fiber C_p = R_+^× / p^Z, with rational coordinate λ
/// normalized to have no factor of p.
class OrbitPoint {
 public:
  static OrbitPoint make(const Integer& p, const Rational& lambda) {
    require_prime(p);
    if (lambda <= 0) throw Error(ErrorCode::InvalidArgument, "orbit coordinate must be positive");
    OrbitPoint x;
    x.prime_ = p;
    x.lambda_ = strip_prime(lambda, p);
    return x;
  }

  const Integer& prime() const { return prime_; }
  const Rational& lambda() const { return lambda_; }

  friend bool operator==(const OrbitPoint&, const OrbitPoint&) = default;

 private:
  Integer prime_ = 2;
  Rational lambda_ = 1;
};

inline OrbitPoint cp_product(const OrbitPoint& x, const OrbitPoint& y) {
  if (x.prime() != y.prime()) throw Error(ErrorCode::PrimeMismatch, "C_" + x.prime().str() + " vs C_" + y.prime().str());
  return OrbitPoint::make(x.prime(), x.lambda() * y.lambda());
}

inline OrbitPoint cp_inverse(const OrbitPoint& x) { return OrbitPoint::make(x.prime(), 1 / x.lambda()); }

inline OrbitPoint cp_identity(const Integer& p) { return OrbitPoint::make(p, 1); }

/// Least k <= bound with x^k = 1 in C_p, if any.
inline std::optional<int> cp_order(const OrbitPoint& x, int bound) {
  OrbitPoint acc = x;
  for (int k = 1; k <= bound; ++k) {
    if (acc == cp_identity(x.prime())) return k;
    acc = cp_product(acc, x);
  }
  return std::nullopt;
}

struct GenericFiberPoint {
  Rational lambda = 1;  ///< an element of R_+^×
  friend bool operator==(const GenericFiberPoint&, const GenericFiberPoint&) = default;
};
struct ArchimedeanFiberPoint {
  friend bool operator==(const ArchimedeanFiberPoint&, const ArchimedeanFiberPoint&) = default;
};

using FiberPoint = std::variant<GenericFiberPoint, OrbitPoint, ArchimedeanFiberPoint>;

/// Product in the monoid of fibers: the archimedean point absorbs, the
/// generic fiber acts on C_p through its coordinate.
inline FiberPoint fiber_product(const FiberPoint& a, const FiberPoint& b) {
  if (std::holds_alternative<ArchimedeanFiberPoint>(a) || std::holds_alternative<ArchimedeanFiberPoint>(b))
    return ArchimedeanFiberPoint{};
  const auto* oa = std::get_if<OrbitPoint>(&a);
  const auto* ob = std::get_if<OrbitPoint>(&b);
  if (oa && ob) return cp_product(*oa, *ob);
  if (oa) return OrbitPoint::make(oa->prime(), oa->lambda() * std::get<GenericFiberPoint>(b).lambda);
  if (ob) return OrbitPoint::make(ob->prime(), ob->lambda() * std::get<GenericFiberPoint>(a).lambda);
  return GenericFiberPoint{std::get<GenericFiberPoint>(a).lambda * std::get<GenericFiberPoint>(b).lambda};
}

enum class FiberLaw { PositiveReals, CircleGroup, Absorbing };

struct FiberDescriptor {
  std::string intermediate;  ///< fiber of the Picard cover
  std::string universal;     ///< fiber of the universal cover
  FiberLaw law;
  friend bool operator==(const FiberDescriptor&, const FiberDescriptor&) = default;
};

inline FiberDescriptor fiber_descriptor(const CurvePoint& point) {
  if (std::holds_alternative<GenericPoint>(point)) return {"R_+^x", "C_Q", FiberLaw::PositiveReals};
  if (const auto* fp = std::get_if<FinitePrime>(&point)) {
    require_prime(fp->p);
    return {"R/(log " + fp->p.str() + ")Z", "C_Q/Q_" + fp->p.str() + "^x", FiberLaw::CircleGroup};
  }
  return {"{1}", "Zhat^x", FiberLaw::Absorbing};
}

/// A point (u, e·log p) of the mapping torus of Frobenius at p. The unit
/// part u lives away from p: explicit components at finitely many v != p
/// and the power p^shift at every other place.
class TorusPoint {
 public:
  using Units = std::map<Integer, TruncatedPadic>;

  static TorusPoint make(const Integer& p, Units units, long shift, Rational time) {
    require_prime(p);
    for (const auto& [v, x] : units) {
      if (v == p) throw Error(ErrorCode::InvalidArgument, "unit part must avoid " + p.str());
      if (x.prime() != v || x.is_zero() || x.finite_valuation() != 0)
        throw Error(ErrorCode::InvalidArgument, "component at " + v.str() + " is not a unit");
    }
    TorusPoint t;
    t.prime_ = p;
    t.units_ = std::move(units);
    t.shift_ = shift;
    t.time_ = std::move(time);
    return t;
  }

  const Integer& prime() const { return prime_; }
  const Units& units() const { return units_; }
  long shift() const { return shift_; }
  const Rational& time() const { return time_; }

  /// Applies (u, t) ↦ (p^k u, t + k log p).
  TorusPoint translate(long k) const {
    Units moved;
    for (const auto& [v, x] : units_) moved.emplace(v, x.scaled(rpow(prime_, k)));
    return make(prime_, std::move(moved), shift_ + k, time_ + k);
  }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  Integer prime_ = 2;
  Units units_;
  long shift_ = 0;
  Rational time_ = 0;
};

/// The representative with time in [0, 1).
inline TorusPoint torus_normalize(const TorusPoint& pt) {
  return pt.translate(-to_long(floor_div(pt.time())));
}

}  // namespace picmonoid
