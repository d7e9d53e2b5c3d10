#pragma once

// Arithmetic divisors on Spec Z: maps prime -> Z ∪ {∞} with finitely many
// negative values. The representable subclass is "eventually constant":
// finitely many explicit entries over a default coefficient in {0, ∞}.
//
// A divisor D classifies the rank-1 group
//   L(D) = { x ∈ Q : v_p(x) >= -n_p for all p }
// and addition of divisors corresponds to the tensor product of groups.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "picmonoid/arith.hpp"
#include "picmonoid/ext_int.hpp"
#include "picmonoid/prime_set.hpp"

namespace picmonoid {

class ArithmeticDivisor {
 public:
  using Entries = std::map<Integer, ExtInt>;

  /// The zero divisor, whose group of sections is Z.
  ArithmeticDivisor() = default;

  /// Builds a canonical divisor: every key is checked for primality and
  /// entries equal to the default are dropped.
  static ArithmeticDivisor make(Entries entries, bool default_inf = false) {
    ArithmeticDivisor d;
    d.default_inf_ = default_inf;
    const ExtInt def = d.default_coefficient();
    for (auto& [p, n] : entries) {
      require_prime(p);
      if (n != def) d.entries_.emplace(p, std::move(n));
    }
    return d;
  }

  const Entries& explicit_entries() const { return entries_; }
  bool default_is_inf() const { return default_inf_; }
  ExtInt default_coefficient() const { return default_inf_ ? ExtInt::inf() : ExtInt(0L); }

  ExtInt coefficient(const Integer& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? default_coefficient() : it->second;
  }

  bool is_zero() const { return !default_inf_ && entries_.empty(); }

  /// True for classical Arakelov-type divisors: default 0 and no ∞ entries.
  bool all_finite() const {
    if (default_inf_) return false;
    for (const auto& [p, n] : entries_)
      if (n.is_inf()) return false;
    return true;
  }

  friend bool operator==(const ArithmeticDivisor& a, const ArithmeticDivisor& b) = default;

 private:
  Entries entries_;
  bool default_inf_ = false;
};

/// Text form: "{2:3, 5:inf; default:0}".
inline std::string to_text(const ArithmeticDivisor& d) {
  std::string out = "{";
  bool first = true;
  for (const auto& [p, n] : d.explicit_entries()) {
    if (!first) out += ", ";
    out += p.str() + ":" + n.str();
    first = false;
  }
  out += std::string(first ? "" : "; ") + "default:" + (d.default_is_inf() ? "inf" : "0") + "}";
  return out;
}

inline ArithmeticDivisor parse_divisor(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::ParseError, "divisor '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n') s += c;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw fail("expected braces");
  s = s.substr(1, s.size() - 2);
  bool default_inf = false;
  auto semi = s.find(';');
  std::string body = s;
  if (semi != std::string::npos) {
    body = s.substr(0, semi);
    std::string tail = s.substr(semi + 1);
    if (tail == "default:inf") default_inf = true;
    else if (tail != "default:0") throw fail("bad default clause '" + tail + "'");
  } else if (s.rfind("default:", 0) == 0) {
    body.clear();
    if (s == "default:inf") default_inf = true;
    else if (s != "default:0") throw fail("bad default clause");
  }
  ArithmeticDivisor::Entries entries;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto colon = item.find(':');
    if (colon == std::string::npos) throw fail("entry '" + item + "' lacks ':'");
    Rational p = parse_rational(item.substr(0, colon));
    if (denominator(p) != 1) throw fail("prime key must be an integer");
    if (!entries.emplace(numerator(p), ExtInt::parse(item.substr(colon + 1))).second) throw fail("duplicate prime");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ArithmeticDivisor::make(std::move(entries), default_inf);
}

/// div(q) = Σ v_p(q)[p].
inline ArithmeticDivisor divisor_from_rational(const Rational& q) {
  if (q == 0) throw Error(ErrorCode::ZeroInput, "principal divisor of 0");
  ArithmeticDivisor::Entries entries;
  for (const auto& [p, e] : factor(q))
    if (e != 0) entries.emplace(p, ExtInt(e));
  return ArithmeticDivisor::make(std::move(entries));
}

inline ArithmeticDivisor divisor_add(const ArithmeticDivisor& a, const ArithmeticDivisor& b) {
  ArithmeticDivisor::Entries entries;
  for (const auto& [p, n] : a.explicit_entries()) entries.emplace(p, n + b.coefficient(p));
  for (const auto& [p, n] : b.explicit_entries())
    if (!entries.count(p)) entries.emplace(p, a.coefficient(p) + n);
  return ArithmeticDivisor::make(std::move(entries), a.default_is_inf() || b.default_is_inf());
}

inline ArithmeticDivisor operator+(const ArithmeticDivisor& a, const ArithmeticDivisor& b) { return divisor_add(a, b); }

inline ArithmeticDivisor divisor_negate(const ArithmeticDivisor& d) {
  if (d.default_is_inf()) throw Error(ErrorCode::InfiniteCoefficient, "default coefficient is inf");
  ArithmeticDivisor::Entries entries;
  for (const auto& [p, n] : d.explicit_entries()) {
    if (n.is_inf()) throw Error(ErrorCode::InfiniteCoefficient, "coefficient at " + p.str() + " is inf");
    entries.emplace(p, -n);
  }
  return ArithmeticDivisor::make(std::move(entries));
}

/// x ∈ L(D), i.e. v_p(x) >= -n_p at every prime.
inline bool sections_contains(const ArithmeticDivisor& d, const Rational& x) {
  if (x == 0) return true;
  // Explicit primes outside supp(x): need 0 >= -n_p.
  for (const auto& [p, n] : d.explicit_entries()) {
    if (n.is_inf()) continue;
    if (Integer(valuation(x, p)) < -n.value()) return false;
  }
  // Primes of x that are not explicit carry the default, 0 or ∞.
  if (d.default_is_inf()) return true;
  Integer den = denominator(x);
  for (const auto& [p, n] : d.explicit_entries())
    while (den % p == 0) den /= p;
  return den == 1;
}

/// The divisor of the subgroup of Q generated by `gens`:
/// n_p = max over nonzero generators of -v_p(g).
inline ArithmeticDivisor divisor_from_generators(const std::vector<Rational>& gens) {
  std::vector<std::map<Integer, long>> factored;
  std::set<Integer> primes;
  for (const auto& g : gens) {
    if (g == 0) continue;
    factored.push_back(factor(g));
    for (const auto& [p, e] : factored.back()) primes.insert(p);
  }
  if (factored.empty()) throw Error(ErrorCode::AllZero, "every generator is zero");
  ArithmeticDivisor::Entries entries;
  for (const auto& p : primes) {
    long n = std::numeric_limits<long>::min();
    for (const auto& fac : factored) {
      auto it = fac.find(p);
      n = std::max(n, it == fac.end() ? 0L : -it->second);
    }
    entries.emplace(p, ExtInt(n));
  }
  return ArithmeticDivisor::make(std::move(entries));
}

/// Θ(S): ∞ on S and 0 elsewhere, the divisor of Z_S = Z[1/p : p ∈ S].
inline ArithmeticDivisor divisor_from_localization(const PrimeSet& s) {
  ArithmeticDivisor::Entries entries;
  const ExtInt off = s.complemented() ? ExtInt(0L) : ExtInt::inf();
  for (const auto& p : s.members()) entries.emplace(p, off);
  return ArithmeticDivisor::make(std::move(entries), s.complemented());
}

/// The primes with coefficient ∞.
inline PrimeSet infinite_locus(const ArithmeticDivisor& d) {
  std::set<Integer> primes;
  for (const auto& [p, n] : d.explicit_entries())
    if (n.is_inf() != d.default_is_inf()) primes.insert(p);
  return d.default_is_inf() ? PrimeSet::all_except(std::move(primes)) : PrimeSet::of(std::move(primes));
}

/// Positive q with D1 = D2 + div(q), or nothing when the classes differ.
inline std::optional<Rational> classes_equivalent(const ArithmeticDivisor& d1, const ArithmeticDivisor& d2) {
  if (d1.default_is_inf() != d2.default_is_inf()) return std::nullopt;
  std::set<Integer> primes;
  for (const auto& [p, n] : d1.explicit_entries()) primes.insert(p);
  for (const auto& [p, n] : d2.explicit_entries()) primes.insert(p);
  Rational q = 1;
  for (const auto& p : primes) {
    ExtInt a = d1.coefficient(p), b = d2.coefficient(p);
    if (a.is_inf() != b.is_inf()) return std::nullopt;
    if (a.is_inf()) continue;
    q *= rpow(p, to_long(a.value() - b.value()));
  }
  return q;
}

struct ClassNormalForm {
  PrimeSet s;        ///< the ∞-locus
  Rational witness;  ///< ∏ p^{n_p} over finite nonzero coefficients

  friend bool operator==(const ClassNormalForm&, const ClassNormalForm&) = default;
};

/// D = Θ(S) + div(witness).
inline ClassNormalForm class_normalize(const ArithmeticDivisor& d) {
  Rational witness = 1;
  for (const auto& [p, n] : d.explicit_entries())
    if (n.is_finite()) witness *= rpow(p, to_long(n.value()));
  return {infinite_locus(d), witness};
}

/// D + D ~ D. Always true on the representable subclass.
inline bool is_idempotent_class(const ArithmeticDivisor& d) {
  return classes_equivalent(divisor_add(d, d), d).has_value();
}

/// Extension hook for divisors that are not eventually constant: the
/// coefficient at each prime comes from a user oracle, which may be
/// negative only on the declared finite set. Supports addition and
/// membership; equality is undecidable and not offered.
class OracleDivisor {
 public:
  using Oracle = std::function<ExtInt(const Integer&)>;

  OracleDivisor(Oracle oracle, std::set<Integer> negative_support)
      : oracle_(std::move(oracle)), negative_support_(std::move(negative_support)) {
    for (const auto& p : negative_support_) require_prime(p);
  }

  explicit OracleDivisor(const ArithmeticDivisor& d)
      : OracleDivisor([d](const Integer& p) { return d.coefficient(p); }, negative_primes(d)) {}

  ExtInt coefficient(const Integer& p) const {
    ExtInt n = oracle_(p);
    if (n < ExtInt(0L) && !negative_support_.count(p))
      throw Error(ErrorCode::InvalidArgument,
                  "oracle returned negative coefficient at undeclared prime " + p.str());
    return n;
  }

  const std::set<Integer>& negative_support() const { return negative_support_; }

  bool contains(const Rational& x) const {
    if (x == 0) return true;
    std::set<Integer> primes = negative_support_;
    for (const auto& [p, e] : factor(x)) primes.insert(p);
    for (const auto& p : primes) {
      ExtInt n = coefficient(p);
      if (n.is_inf()) continue;
      if (Integer(valuation(x, p)) < -n.value()) return false;
    }
    return true;
  }

  friend OracleDivisor operator+(const OracleDivisor& a, const OracleDivisor& b) {
    std::set<Integer> neg = a.negative_support_;
    neg.insert(b.negative_support_.begin(), b.negative_support_.end());
    return OracleDivisor([a, b](const Integer& p) { return a.coefficient(p) + b.coefficient(p); }, std::move(neg));
  }

 private:
  static std::set<Integer> negative_primes(const ArithmeticDivisor& d) {
    std::set<Integer> out;
    for (const auto& [p, n] : d.explicit_entries())
      if (n < ExtInt(0L)) out.insert(p);
    return out;
  }

  Oracle oracle_;
  std::set<Integer> negative_support_;
};

}  // namespace picmonoid
