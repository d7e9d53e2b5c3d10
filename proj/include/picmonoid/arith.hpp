#pragma once

// Exact integer and rational arithmetic used throughout the library:
// valuations, primality, factorization, modular inverses and CRT.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picmonoid/error.hpp"

namespace picmonoid {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer abs(const Integer& n) { return n < 0 ? Integer(-n) : n; }
inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Non-negative residue of `a` modulo `m` (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

inline Integer ipow(const Integer& base, long exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in ipow");
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

/// base^exponent for a possibly negative exponent.
inline Rational rpow(const Integer& base, long exponent) {
  if (exponent >= 0) return Rational(ipow(base, exponent));
  return Rational(Integer(1), ipow(base, -exponent));
}

inline long to_long(const Integer& n) {
  if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
    throw Error(ErrorCode::InvalidArgument, "integer does not fit a machine word: " + n.str());
  return n.convert_to<long>();
}

/// Inverse of `a` modulo `m`; throws when gcd(a, m) != 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return 0;
  Integer old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(ErrorCode::InvalidArgument, a.str() + " is not invertible modulo " + m.str());
  return mod(old_s, m);
}

/// Residue of the rational q modulo m; the denominator must be coprime to m.
inline Integer rational_mod(const Rational& q, const Integer& m) {
  return mod(numerator(q) * inverse_mod(denominator(q), m), m);
}

/// Combines residues r_i mod m_i (pairwise coprime moduli) into one residue mod prod m_i.
inline std::pair<Integer, Integer> crt(const std::vector<std::pair<Integer, Integer>>& residues) {
  Integer r = 0, m = 1;
  for (const auto& [ri, mi] : residues) {
    Integer t = mod((ri - r) * inverse_mod(m, mi), mi);
    r += m * t;
    m *= mi;
    r = mod(r, m);
  }
  return {r, m};
}

/// v_p(n) for n != 0.
inline long valuation(Integer n, const Integer& p) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// v_p(q) for q != 0.
inline long valuation(const Rational& q, const Integer& p) {
  return valuation(numerator(q), p) - valuation(denominator(q), p);
}

/// q / p^{v_p(q)}, the p-unit part of a nonzero rational.
inline Rational strip_prime(const Rational& q, const Integer& p) {
  Integer n = numerator(q), d = denominator(q);
  while (n % p == 0) n /= p;
  while (d % p == 0) d /= p;
  return Rational(n, d);
}

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for all n < 2^64 with these bases.
inline bool miller_rabin64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool fits_u64(const Integer& n) { return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max(); }

inline std::uint64_t pollard_brent64(std::uint64_t n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(seed);
  for (;;) {
    std::uint64_t y = rng() % n, c = rng() % (n - 1) + 1, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline Integer pollard_rho_big(const Integer& n, unsigned seed) {
  if (n % 2 == 0) return 2;
  for (Integer c = seed + 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) { return mod(v * v + c, n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(abs(Integer(x - y)), n);
    }
    if (d != n) return d;
  }
}

}  // namespace detail

/// Primality: deterministic below 2^64, Miller-Rabin with 25 rounds above.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (detail::fits_u64(n)) return detail::miller_rabin64(n.convert_to<std::uint64_t>());
  return boost::multiprecision::miller_rabin_test(n, 25);
}

inline void require_prime(const Integer& p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, p.str() + " is not prime");
}

namespace detail {

inline void factor_into(const Integer& n, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d;
  if (fits_u64(n)) {
    d = pollard_brent64(n.convert_to<std::uint64_t>(), 0x9e3779b97f4a7c15ull);
  } else {
    d = pollard_rho_big(n, 1);
  }
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), as prime -> exponent.
inline std::map<Integer, long> factor(const Integer& n) {
  if (n == 0) throw Error(ErrorCode::ZeroInput, "cannot factor zero");
  Integer m = abs(n);
  std::map<Integer, long> out;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
    while (m % p == 0) {
      m /= p;
      ++out[Integer(p)];
    }
  }
  detail::factor_into(m, out);
  return out;
}

/// Prime -> v_p(q) for all primes where it is nonzero (q != 0).
inline std::map<Integer, long> factor(const Rational& q) {
  if (q == 0) throw Error(ErrorCode::ZeroInput, "cannot factor zero");
  auto out = factor(numerator(q));
  for (const auto& [p, e] : factor(denominator(q))) out[p] -= e;
  return out;
}

/// The primes dividing num(q)·den(q).
inline std::vector<Integer> prime_support(const Rational& q) {
  std::vector<Integer> primes;
  if (q == 0) return primes;
  for (const auto& [p, e] : factor(q)) primes.push_back(p);
  return primes;
}

/// Parses "a", "-a", "a/b" into a reduced rational.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    }
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Integer floor_div(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

}  // namespace picmonoid
