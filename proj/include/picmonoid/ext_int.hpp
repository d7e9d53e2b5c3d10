#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "picmonoid/arith.hpp"

namespace picmonoid {

/// An element of Z ∪ {+∞}. Addition is absorbing at ∞; ∞ has no negative.
class ExtInt {
 public:
  ExtInt() = default;
  ExtInt(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtInt(Integer v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static ExtInt inf() {
    ExtInt e;
    e.infinite_ = true;
    return e;
  }

  bool is_inf() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Integer& value() const {
    if (infinite_) throw Error(ErrorCode::InfiniteCoefficient, "value of an infinite coefficient");
    return value_;
  }

  friend ExtInt operator+(const ExtInt& a, const ExtInt& b) {
    if (a.infinite_ || b.infinite_) return inf();
    return ExtInt(Integer(a.value_ + b.value_));
  }

  ExtInt operator-() const {
    if (infinite_) throw Error(ErrorCode::InfiniteCoefficient, "negation of an infinite coefficient");
    return ExtInt(Integer(-value_));
  }

  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }

  static ExtInt parse(std::string_view text) {
    if (text == "inf" || text == "INF" || text == "+inf") return inf();
    Rational q = parse_rational(text);
    if (denominator(q) != 1) throw Error(ErrorCode::ParseError, "expected an integer or 'inf', got '" + std::string(text) + "'");
    return ExtInt(numerator(q));
  }

 private:
  Integer value_ = 0;
  bool infinite_ = false;
};

}  // namespace picmonoid
