#include <gtest/gtest.h>

#include "check.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "picmonoid/picmonoid.hpp"

using namespace picmonoid;
using check::error_of;

namespace {

/// {y}_p by the definition: the unique r/p^k in [0,1) with y - r/p^k a p-adic integer.
Rational fractional_part_oracle(const Rational& y, long p) {
  long num = static_cast<long>(numerator(y)), den = static_cast<long>(denominator(y));
  long pk = 1, rest = den;
  while (rest % p == 0) {
    rest /= p;
    pk *= p;
  }
  if (pk == 1) return 0;
  // y = num/(pk·rest); r ≡ num·rest^{-1} mod pk.
  long r = oracle::mulmod(((num % pk) + pk) % pk, oracle::inverse(rest, pk), pk);
  return Rational(r, pk);
}

}  // namespace

TEST(PadicFromRational, PowerOfTwo) {
  auto x = padic_from_rational(8, 2, 4);
  EXPECT_EQ(x.valuation(), ExtInt(3L));
  EXPECT_EQ(x.unit(), 1);
  EXPECT_EQ(x.precision(), 4);
}

TEST(PadicFromRational, Zero) { EXPECT_TRUE(padic_from_rational(0, 7, 3).is_zero()); }

TEST(PadicFromRational, InverseOfThreeModTwentyFive) {
  auto x = padic_from_rational(Rational(1, 3), 5, 2);
  EXPECT_EQ(x.valuation(), ExtInt(0L));
  EXPECT_EQ(x.unit(), oracle::inverse(3, 25));
  EXPECT_EQ(x.unit(), 17);
}

TEST(PadicFromRational, NonPrime) { EXPECT_EQ(error_of([] { padic_from_rational(2, 6, 3); }), ErrorCode::NonPrime); }

TEST(AdeleMultiply, UnitIsIdentity) {
  gen::Source src(11);
  for (int i = 0; i < 50; ++i) {
    Adele a = src.adele();
    EXPECT_EQ(adele_multiply(a, Adele{}), a);
  }
}

TEST(AdeleMultiply, IdempotentIsIdempotent) {
  Adele e{FiniteAdele::idempotent({7}), 1, std::nullopt};
  EXPECT_EQ(adele_multiply(e, e), e);
}

TEST(AdeleMultiply, ModularProductOfUnits) {
  Adele a{FiniteAdele::make({{5, TruncatedPadic::make(5, 1, 3, 2)}}), 1, std::nullopt};
  Adele b{FiniteAdele::make({{5, TruncatedPadic::make(5, 2, 7, 2)}}), 1, std::nullopt};
  auto c = adele_multiply(a, b).finite.explicit_component(5);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->valuation(), ExtInt(3L));
  EXPECT_EQ(c->unit(), 21);
  EXPECT_EQ(c->precision(), 2);
}

TEST(AdeleMultiply, PrecisionIsTheMinimum) {
  auto x = TruncatedPadic::make(3, 0, 2, 5).times(TruncatedPadic::make(3, 1, 4, 2));
  EXPECT_EQ(x.precision(), 2);
  EXPECT_EQ(x.unit(), 8);
}

TEST(AdeleToDivisor, Cases) {
  EXPECT_TRUE(adele_to_divisor(FiniteAdele()).is_zero());
  EXPECT_EQ(adele_to_divisor(FiniteAdele::idempotent({3})), parse_divisor("{3:inf}"));
}

TEST(AdeleToDivisor, DiagonalImageGivesPrincipalDivisor) {
  gen::Source src(12);
  for (int i = 0; i < 200; ++i) {
    Rational q = src.wide_rational();
    EXPECT_EQ(adele_to_divisor(FiniteAdele::diagonal(q, 6)), divisor_from_rational(q)) << to_string(q);
  }
}

TEST(SubgroupMembership, Cases) {
  for (long n : {-7L, 0L, 1L, 12L, 1001L}) EXPECT_TRUE(subgroup_membership(FiniteAdele(), n));
  auto a = FiniteAdele::make({{5, TruncatedPadic::make(5, -2, 1, 3)}});
  EXPECT_FALSE(subgroup_membership(a, Rational(1, 5)));
  EXPECT_TRUE(subgroup_membership(a, 25));
}

TEST(SubgroupMembership, AgreesWithSections) {
  gen::Source src(13);
  for (int i = 0; i < 1000; ++i) {
    FiniteAdele a = src.finite_adele();
    Rational q = src.coin() ? src.rational(5) : src.wide_rational();
    EXPECT_EQ(subgroup_membership(a, q), sections_contains(adele_to_divisor(a), q));
  }
}

TEST(YqReduce, DiagonalSix) {
  Adele a{FiniteAdele::diagonal(6, 8), 6, std::nullopt};
  auto r = yq_reduce(a);
  EXPECT_EQ(r.multiplier, Rational(1, 6));
  EXPECT_EQ(r.reduced.infinite, 1);
  for (const auto& [p, x] : r.reduced.finite.components()) {
    EXPECT_EQ(x.valuation(), ExtInt(0L));
    EXPECT_EQ(x.unit(), 1);
  }
  EXPECT_EQ(r.reduced.finite.cofactor(), 1);
}

TEST(YqReduce, IdempotentIsUnchanged) {
  Adele e{FiniteAdele::idempotent({3}), 1, std::nullopt};
  auto r = yq_reduce(e);
  EXPECT_EQ(r.multiplier, 1);
  EXPECT_EQ(r.reduced, e);
}

TEST(YqReduce, TranslatesReduceAlike) {
  gen::Source src(14);
  for (int i = 0; i < 300; ++i) {
    Adele a = src.adele();
    Rational q = src.rational(3);
    Adele qa{a.finite.scaled(q, 12), a.infinite * q, std::nullopt};
    auto ra = yq_reduce(a).reduced, rq = yq_reduce(qa).reduced;
    EXPECT_EQ(ra.infinite, rq.infinite);
    EXPECT_EQ(adele_to_divisor(ra.finite), adele_to_divisor(rq.finite));
    // The explicit components may differ only by the units of q at primes where a was explicit.
    EXPECT_EQ(xq_class(ra), xq_class(rq));
  }
}

TEST(XqClass, Cases) {
  EXPECT_EQ(xq_class(Adele{}), PicClass());
  gen::Source src(15);
  for (int i = 0; i < 50; ++i) {
    Rational q = src.wide_rational();
    EXPECT_EQ(xq_class(Adele{FiniteAdele::diagonal(q, 4), q, std::nullopt}), PicClass()) << to_string(q);
  }
  EXPECT_EQ(xq_class(Adele{FiniteAdele::idempotent({5}), 1, std::nullopt}), PicClass::make(PrimeSet::of({5}), 1));
}

TEST(PsiPair, HalfAtTheUnitAdele) {
  auto v = psi_pair(FiniteAdele(), Rational(1, 2));
  EXPECT_EQ(v.value(), fractional_part_oracle(Rational(1, 2), 2));
  EXPECT_EQ(v.value(), Rational(1, 2));
}

TEST(PsiPair, IntegersPairToZero) {
  gen::Source src(16);
  for (int i = 0; i < 100; ++i) {
    FiniteAdele a = src.finite_adele();
    // integers are only guaranteed to pair to zero against integral adeles
    bool integral = true;
    for (const auto& [p, x] : a.components()) integral = integral && (x.is_zero() || x.finite_valuation() >= 0);
    if (integral) EXPECT_EQ(psi_pair(a, src.uniform(-1000, 1000)), QmodZ());
  }
  EXPECT_EQ(psi_pair(FiniteAdele(), 17), QmodZ());
}

TEST(PsiPair, MatchesFractionalPartsForRationalAdeles) {
  // For a = diagonal(r), ψ(a)(q) = Σ_p {rq}_p, which sums to rq mod 1.
  gen::Source src(17);
  for (int i = 0; i < 300; ++i) {
    Rational r = src.rational(2), q = src.rational(2);
    Rational y = r * q;
    Rational want = 0;
    for (auto [p, e] : oracle::trial_factor(static_cast<long>(denominator(y)))) want += fractional_part_oracle(y, p);
    auto got = psi_pair(FiniteAdele::diagonal(r, 10), q);
    EXPECT_EQ(got, QmodZ(want));
    EXPECT_EQ(got, QmodZ(y));
  }
}

TEST(PsiPair, IsAdditive) {
  gen::Source src(18);
  for (int i = 0; i < 500; ++i) {
    FiniteAdele a = src.finite_adele(14);
    Rational q1 = src.rational(2), q2 = src.rational(2);
    EXPECT_EQ(psi_pair(a, q1 + q2), psi_pair(a, q1) + psi_pair(a, q2));
  }
}

TEST(PsiPair, ReportsMissingDigits) {
  auto a = FiniteAdele::make({{3, TruncatedPadic::make(3, -1, 2, 1)}});
  // a·1 = 2/3 needs one digit of the unit, a·(1/3) = 2/9 needs two.
  EXPECT_EQ(psi_pair(a, 1), QmodZ(Rational(2, 3)));
  EXPECT_EQ(psi_pair(a, 3), QmodZ());
  auto e = error_of([&] { psi_pair(a, Rational(1, 3)); });
  EXPECT_EQ(e, ErrorCode::InsufficientPrecision);
}

TEST(PsiPair, VanishingOnReciprocalsDetectsDivisibility) {
  // ψ(a)(1/n) = 0 for all n <= 30 exactly when v_p(a_p) >= floor(log_p 30) at every p <= 30.
  const long bound = 30;
  gen::Source src(19);
  auto needed = [&](long p) {
    long k = 0;
    for (long pk = p; pk <= bound; pk *= p) ++k;
    return k;
  };
  for (int i = 0; i < 200; ++i) {
    FiniteAdele::Components comps;
    for (long p : oracle::primes_below(bound + 1)) {
      long v = needed(p) + (src.coin(0.08) ? -src.uniform(1, 2) : src.uniform(0, 1));
      comps.emplace(p, src.coin(0.1) ? TruncatedPadic::zero(p) : src.padic(p, 8, 0, 0.0).scaled(rpow(p, v)));
    }
    FiniteAdele a = FiniteAdele::make(std::move(comps));
    bool integral_enough = true;
    for (const auto& [p, x] : a.components())
      integral_enough = integral_enough && (x.is_zero() || x.finite_valuation() >= needed(static_cast<long>(p)));
    bool vanishes = true;
    for (long n = 1; n <= bound; ++n) vanishes = vanishes && psi_pair(a, Rational(1, n)) == QmodZ();
    EXPECT_EQ(vanishes, integral_enough);
  }
}

TEST(Precision, MoreDigitsNeverChangeReportedDigits) {
  gen::Source src(20);
  for (int i = 0; i < 200; ++i) {
    Rational q = src.wide_rational(), r = src.wide_rational();
    for (long p : {2L, 3L, 5L}) {
      auto lo = padic_from_rational(q, p, 3).times(padic_from_rational(r, p, 3));
      auto hi = padic_from_rational(q, p, 9).times(padic_from_rational(r, p, 9));
      EXPECT_TRUE(hi.agrees_with(lo, 3));
    }
  }
}
