#include <gtest/gtest.h>

#include "check.hpp"
#include "oracles.hpp"
#include "picmonoid/picmonoid.hpp"

using namespace picmonoid;

namespace {

ArithmeticDivisor D(std::string_view text) { return parse_divisor(text); }

using check::error_of;

}  // namespace

TEST(DivisorFromRational, PowerOfTwo) { EXPECT_EQ(divisor_from_rational(8), D("{2:3}")); }

TEST(DivisorFromRational, One) { EXPECT_TRUE(divisor_from_rational(1).is_zero()); }

TEST(DivisorFromRational, AgreesWithTrialFactorization) {
  auto d = divisor_from_rational(Rational(12, 35));
  std::map<oracle::i64, int> want = oracle::trial_factor(12);
  for (auto [p, e] : oracle::trial_factor(35)) want[p] -= e;
  ASSERT_EQ(d.explicit_entries().size(), want.size());
  for (auto [p, e] : want) EXPECT_EQ(d.coefficient(p), ExtInt(static_cast<long>(e)));
  EXPECT_FALSE(d.default_is_inf());
}

TEST(DivisorFromRational, ZeroIsRejected) {
  EXPECT_EQ(error_of([] { divisor_from_rational(0); }), ErrorCode::ZeroInput);
}

TEST(DivisorAdd, Componentwise) { EXPECT_EQ(D("{2:3}") + D("{2:-1, 5:inf}"), D("{2:2, 5:inf}")); }

TEST(DivisorAdd, ZeroIsIdentity) {
  auto d = D("{3:-2, 7:inf}");
  EXPECT_EQ(d + ArithmeticDivisor(), d);
}

TEST(DivisorAdd, LocalizationIsIdempotent) { EXPECT_EQ(D("{7:inf}") + D("{7:inf}"), D("{7:inf}")); }

TEST(DivisorAdd, CancellingEntriesDisappear) {
  auto d = D("{2:3, 3:1}") + D("{2:-3}");
  EXPECT_EQ(d, D("{3:1}"));
  EXPECT_EQ(d.explicit_entries().size(), 1u);
}

TEST(DivisorNegate, Cases) {
  EXPECT_EQ(divisor_negate(D("{2:3}")), D("{2:-3}"));
  EXPECT_TRUE(divisor_negate(ArithmeticDivisor()).is_zero());
  EXPECT_EQ(error_of([] { divisor_negate(D("{5:inf}")); }), ErrorCode::InfiniteCoefficient);
  EXPECT_EQ(error_of([] { divisor_negate(D("{default:inf}")); }), ErrorCode::InfiniteCoefficient);
}

TEST(SectionsContains, Cases) {
  EXPECT_TRUE(sections_contains(D("{2:3}"), Rational(5, 8)));
  EXPECT_FALSE(sections_contains(D("{2:3}"), Rational(1, 16)));
  EXPECT_TRUE(sections_contains(D("{5:inf}"), Rational(7, 125)));
  EXPECT_TRUE(sections_contains(D("{2:3}"), 0));
  EXPECT_FALSE(sections_contains(D("{2:3}"), Rational(1, 3)));
  EXPECT_FALSE(sections_contains(D("{3:-2}"), 3));
  EXPECT_TRUE(sections_contains(D("{3:-2}"), 18));
  EXPECT_TRUE(sections_contains(D("{3:0; default:inf}"), Rational(1, 1001)));
  EXPECT_FALSE(sections_contains(D("{7:0; default:inf}"), Rational(1, 1001)));
}

TEST(DivisorFromGenerators, IntegersGiveZero) { EXPECT_TRUE(divisor_from_generators({1}).is_zero()); }

TEST(DivisorFromGenerators, HalfAndThird) {
  auto d = divisor_from_generators({Rational(1, 2), Rational(1, 3)});
  EXPECT_EQ(d, D("{2:1, 3:1}"));
  // 1/6 = a/2 + b/3 with 3a + 2b = 1: the extended gcd gives a = inverse of 3 mod 2.
  oracle::i64 a = oracle::inverse(3, 2), b = (1 - 3 * a) / 2;
  EXPECT_EQ(Rational(a, 2) + Rational(b, 3), Rational(1, 6));
  EXPECT_TRUE(sections_contains(d, Rational(1, 6)));
  EXPECT_FALSE(sections_contains(d, Rational(1, 12)));
  // Every integer combination lies in L(D), and L(D) ∩ (1/36)Z is exactly (1/6)Z.
  for (int i = -6; i <= 6; ++i)
    for (int j = -6; j <= 6; ++j) EXPECT_TRUE(sections_contains(d, Rational(i, 2) + Rational(j, 3)));
  for (int k = -40; k <= 40; ++k) EXPECT_EQ(sections_contains(d, Rational(k, 36)), k % 6 == 0) << k;
}

TEST(DivisorFromGenerators, SingleGenerator) {
  EXPECT_EQ(divisor_from_generators({Rational(2, 3)}), D("{2:-1, 3:1}"));
}

TEST(DivisorFromGenerators, AllZero) {
  EXPECT_EQ(error_of([] { divisor_from_generators({0, 0}); }), ErrorCode::AllZero);
}

TEST(DivisorFromLocalization, Cases) {
  EXPECT_TRUE(divisor_from_localization(PrimeSet()).is_zero());
  EXPECT_EQ(divisor_from_localization(PrimeSet::of({5})), D("{5:inf}"));
  auto q = divisor_from_localization(PrimeSet::all());
  EXPECT_TRUE(q.default_is_inf());
  EXPECT_TRUE(q.explicit_entries().empty());
  EXPECT_EQ(divisor_from_localization(PrimeSet::all_except({2})), D("{2:0; default:inf}"));
}

TEST(ClassesEquivalent, PrincipalWitness) {
  auto w = classes_equivalent(D("{2:3}"), ArithmeticDivisor());
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, 8);
}

TEST(ClassesEquivalent, DifferentLocalizationsAreNotEquivalent) {
  EXPECT_FALSE(classes_equivalent(D("{5:inf}"), D("{7:inf}")));
}

TEST(ClassesEquivalent, WitnessAgreesWithSections) {
  auto d1 = D("{2:1, 5:inf}"), d2 = D("{5:inf}");
  auto w = classes_equivalent(d1, d2);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, 2);
  // D1 = D2 + div(2) means L(D1) = L(D2)/2.
  for (int a = -4; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int sign : {-1, 1}) {
        Rational x = sign * rpow(2, a) / rpow(5, b);
        EXPECT_EQ(sections_contains(d1, x), sections_contains(d2, x * 2)) << to_string(x);
      }
}

TEST(ClassNormalize, Cases) {
  auto a = class_normalize(D("{2:3}"));
  EXPECT_TRUE(a.s.empty());
  EXPECT_EQ(a.witness, 8);
  auto b = class_normalize(D("{5:inf, 3:-2}"));
  EXPECT_EQ(b.s, PrimeSet::of({5}));
  EXPECT_EQ(b.witness, Rational(1, 9));
}

TEST(ClassNormalize, DefaultInfinityWithException) {
  auto d = D("{2:4; default:inf}");
  auto nf = class_normalize(d);
  EXPECT_EQ(nf.s, PrimeSet::all_except({2}));
  EXPECT_EQ(nf.witness, 16);
  auto w = classes_equivalent(d, divisor_from_localization(nf.s) + divisor_from_rational(16));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, 1);
}

TEST(IsIdempotentClass, Cases) {
  EXPECT_TRUE(is_idempotent_class(ArithmeticDivisor()));
  EXPECT_TRUE(is_idempotent_class(D("{11:inf}")));
  EXPECT_TRUE(is_idempotent_class(D("{2:1}")));
}

TEST(DivisorText, RoundTripAndSparsity) {
  auto d = D("{ 2:3, 5:inf ; default:0 }");
  EXPECT_EQ(to_text(d), "{2:3, 5:inf; default:0}");
  EXPECT_EQ(parse_divisor(to_text(d)), d);
  EXPECT_EQ(to_text(D("{3:0}")), "{default:0}");
  EXPECT_EQ(to_text(D("{3:inf; default:inf}")), "{default:inf}");
  EXPECT_EQ(error_of([] { D("{4:1}"); }), ErrorCode::NonPrime);
  EXPECT_EQ(error_of([] { D("2:1"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { D("{2:1; default:7}"); }), ErrorCode::ParseError);
}

TEST(OracleDivisor, AgreesWithEventuallyConstantDivisor) {
  auto d = D("{2:3, 3:-1, 5:inf}");
  OracleDivisor o(d);
  for (long p : {2L, 3L, 5L, 7L, 101L}) EXPECT_EQ(o.coefficient(p), d.coefficient(p));
  for (const Rational& x : {Rational(5, 8), Rational(1, 16), Rational(3), Rational(1), Rational(7, 625), Rational(1, 7)})
    EXPECT_EQ(o.contains(x), sections_contains(d, x)) << to_string(x);
  auto sum = o + OracleDivisor(D("{3:2}"));
  EXPECT_EQ(sum.coefficient(3), ExtInt(1L));
}

TEST(OracleDivisor, GenuinelyInfiniteSupport) {
  // n_p = 1 at every odd prime: L holds 1/p for each odd p, but not 1/9 or 1/2.
  OracleDivisor o([](const Integer& p) { return ExtInt(p == 2 ? 0L : 1L); }, {});
  EXPECT_TRUE(o.contains(Rational(1, 3 * 5 * 7 * 101)));
  EXPECT_FALSE(o.contains(Rational(1, 9)));
  EXPECT_FALSE(o.contains(Rational(1, 2)));
}

TEST(OracleDivisor, UndeclaredNegativeCoefficientIsRejected) {
  OracleDivisor o([](const Integer&) { return ExtInt(-1L); }, {3});
  EXPECT_EQ(o.coefficient(3), ExtInt(-1L));
  EXPECT_EQ(error_of([&] { o.coefficient(5); }), ErrorCode::InvalidArgument);
}
