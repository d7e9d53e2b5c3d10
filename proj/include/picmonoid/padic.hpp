#pragma once

#include <algorithm>
#include <limits>
#include <string>

#include "picmonoid/arith.hpp"
#include "picmonoid/ext_int.hpp"

namespace picmonoid {

/// An element p^v · u of Q_p with the unit u known modulo p^precision.
/// Valuation ∞ encodes the exact zero, which carries no unit digits.
class TruncatedPadic {
 public:
  static TruncatedPadic zero(const Integer& p) {
    require_prime(p);
    TruncatedPadic z;
    z.prime_ = p;
    z.valuation_ = ExtInt::inf();
    z.unit_ = 0;
    z.precision_ = 0;
    return z;
  }

  static TruncatedPadic make(const Integer& p, long valuation, const Integer& unit, int precision) {
    require_prime(p);
    if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    TruncatedPadic x;
    x.prime_ = p;
    x.valuation_ = ExtInt(valuation);
    x.precision_ = precision;
    x.unit_ = mod(unit, x.modulus());
    if (x.unit_ % p == 0) throw Error(ErrorCode::InvalidArgument, "unit " + unit.str() + " is divisible by " + p.str());
    return x;
  }

  /// Embeds x ∈ Q into Q_p keeping `precision` unit digits.
  static TruncatedPadic from_rational(const Rational& x, const Integer& p, int precision) {
    require_prime(p);
    if (precision < 1) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    if (x == 0) return zero(p);
    long v = picmonoid::valuation(x, p);
    Integer m = ipow(p, precision);
    return make(p, v, rational_mod(strip_prime(x, p), m), precision);
  }

  const Integer& prime() const { return prime_; }
  const ExtInt& valuation() const { return valuation_; }
  const Integer& unit() const { return unit_; }
  int precision() const { return precision_; }
  bool is_zero() const { return valuation_.is_inf(); }
  long finite_valuation() const { return to_long(valuation_.value()); }
  Integer modulus() const { return ipow(prime_, precision_); }

  /// Product in Q_p; the unit is known to the smaller of the two precisions.
  TruncatedPadic times(const TruncatedPadic& other) const {
    if (prime_ != other.prime_) throw Error(ErrorCode::PrimeMismatch, "p-adic product across primes");
    if (is_zero() || other.is_zero()) return zero(prime_);
    int k = std::min(precision_, other.precision_);
    return make(prime_, finite_valuation() + other.finite_valuation(), unit_ * other.unit_, k);
  }

  /// Product with an exact rational; precision is unchanged.
  TruncatedPadic scaled(const Rational& r) const {
    if (is_zero() || r == 0) return zero(prime_);
    long v = picmonoid::valuation(r, prime_);
    Integer m = modulus();
    return make(prime_, finite_valuation() + v, unit_ * rational_mod(strip_prime(r, prime_), m), precision_);
  }

  /// Equal valuations and units agreeing to `digits` digits (exact zeros agree).
  bool agrees_with(const TruncatedPadic& other, int digits) const {
    if (prime_ != other.prime_ || valuation_ != other.valuation_) return false;
    if (is_zero()) return true;
    Integer m = ipow(prime_, digits);
    return mod(unit_, m) == mod(other.unit_, m);
  }

  friend bool operator==(const TruncatedPadic&, const TruncatedPadic&) = default;

  std::string str() const {
    if (is_zero()) return "0";
    return prime_.str() + "^" + valuation_.str() + "*(" + unit_.str() + " mod " + prime_.str() + "^" +
           std::to_string(precision_) + ")";
  }

 private:
  Integer prime_ = 2;
  ExtInt valuation_ = ExtInt::inf();
  Integer unit_ = 0;
  int precision_ = 0;
};

}  // namespace picmonoid
