#pragma once

#include <set>
#include <string>

#include "picmonoid/arith.hpp"

namespace picmonoid {

/// A set of rational primes: either the finite set `members`, or, when
/// `complemented`, every prime except `members`.
class PrimeSet {
 public:
  PrimeSet() = default;

  static PrimeSet of(std::set<Integer> primes) {
    for (const auto& p : primes) require_prime(p);
    PrimeSet s;
    s.members_ = std::move(primes);
    return s;
  }

  static PrimeSet all_except(std::set<Integer> primes) {
    PrimeSet s = of(std::move(primes));
    s.complemented_ = true;
    return s;
  }

  static PrimeSet all() { return all_except({}); }

  bool complemented() const { return complemented_; }
  const std::set<Integer>& members() const { return members_; }

  bool contains(const Integer& p) const { return complemented_ != (members_.count(p) > 0); }
  bool empty() const { return !complemented_ && members_.empty(); }
  bool finite() const { return !complemented_; }

  PrimeSet complement() const {
    PrimeSet s = *this;
    s.complemented_ = !complemented_;
    return s;
  }

  friend PrimeSet set_union(const PrimeSet& a, const PrimeSet& b) {
    PrimeSet out;
    if (!a.complemented_ && !b.complemented_) {
      out.members_ = a.members_;
      out.members_.insert(b.members_.begin(), b.members_.end());
    } else if (a.complemented_ && b.complemented_) {
      // (all \ A) ∪ (all \ B) = all \ (A ∩ B)
      out.complemented_ = true;
      for (const auto& p : a.members_)
        if (b.members_.count(p)) out.members_.insert(p);
    } else {
      const PrimeSet& co = a.complemented_ ? a : b;
      const PrimeSet& fin = a.complemented_ ? b : a;
      out.complemented_ = true;
      for (const auto& p : co.members_)
        if (!fin.members_.count(p)) out.members_.insert(p);
    }
    return out;
  }

  friend PrimeSet set_intersection(const PrimeSet& a, const PrimeSet& b) {
    return set_union(a.complement(), b.complement()).complement();
  }

  friend bool operator==(const PrimeSet& a, const PrimeSet& b) = default;

  std::string str() const {
    std::string out = complemented_ ? "all primes except {" : "{";
    bool first = true;
    for (const auto& p : members_) {
      if (!first) out += ", ";
      out += p.str();
      first = false;
    }
    return out + "}";
  }

 private:
  std::set<Integer> members_;
  bool complemented_ = false;
};

}  // namespace picmonoid
