// Randomized checks of the algebraic laws, with fixed seeds.

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "picmonoid/picmonoid.hpp"

using namespace picmonoid;

namespace {

/// L(D) membership from trial factorization of the numerator and denominator.
bool sections_oracle(const ArithmeticDivisor& d, const Rational& x) {
  if (x == 0) return true;
  // trial division on big integers; the values here outgrow 64 bits
  auto trial = [](Integer n) {
    std::map<oracle::i64, int> out;
    for (oracle::i64 p = 2; Integer(p) * p <= n; ++p)
      while (n % p == 0) {
        ++out[p];
        n /= p;
      }
    if (n > 1) out[static_cast<oracle::i64>(n)]++;
    return out;
  };
  std::map<oracle::i64, int> v = trial(abs(numerator(x)));
  for (auto [p, e] : trial(denominator(x))) v[p] -= e;
  for (auto [p, e] : v) {
    ExtInt n = d.coefficient(p);
    if (!n.is_inf() && e < -static_cast<long>(n.value())) return false;
  }
  // primes absent from v have valuation 0, which fails only where n_p < 0
  for (const auto& [p, n] : d.explicit_entries())
    if (!v.count(static_cast<oracle::i64>(p)) && !n.is_inf() && n.value() < 0) return false;
  return true;
}

/// Splits x ∈ L(D1 + D2) into x1·x2 with x_i ∈ L(D_i), prime by prime.
std::pair<Rational, Rational> split_section(const ArithmeticDivisor& d1, const ArithmeticDivisor& d2, const Rational& x) {
  Rational x1 = x < 0 ? -1 : 1;
  for (const auto& [p, v] : factor(x)) {
    ExtInt n1 = d1.coefficient(p), n2 = d2.coefficient(p);
    long v1 = 0;
    if (n1.is_finite())
      v1 = -to_long(n1.value());
    else if (n2.is_finite())
      v1 = v + to_long(n2.value());
    else
      v1 = v;
    x1 *= rpow(p, v1);
  }
  // primes of D1 with negative coefficient not dividing x still need x1 to carry p^{-n1}
  for (const auto& [p, n1] : d1.explicit_entries())
    if (n1.is_finite() && valuation(x, p) == 0 && n1.value() != 0) x1 *= rpow(p, -to_long(n1.value()));
  return {x1, x / x1};
}

}  // namespace

TEST(DivisorLaws, SectionsAgreeWithTrialDivision) {
  gen::Source src(101);
  for (int i = 0; i < 2000; ++i) {
    auto d = src.divisor(0.2, true);
    Rational x = src.coin() ? src.element_of(d, 2) : src.wide_rational();
    EXPECT_EQ(sections_contains(d, x), sections_oracle(d, x)) << to_text(d) << " " << to_string(x);
  }
}

TEST(DivisorLaws, CommutativeMonoid) {
  gen::Source src(102);
  for (int i = 0; i < 1000; ++i) {
    auto a = src.divisor(0.2, true), b = src.divisor(0.2, true), c = src.divisor(0.2, true);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a + ArithmeticDivisor(), a);
  }
}

TEST(DivisorLaws, TensorLawBothDirections) {
  gen::Source src(103);
  for (int i = 0; i < 300; ++i) {
    auto d1 = src.divisor(0.2), d2 = src.divisor(0.2);
    auto sum = d1 + d2;
    for (int j = 0; j < 10; ++j) {
      Rational x1 = src.element_of(d1), x2 = src.element_of(d2);
      EXPECT_TRUE(sections_contains(sum, x1 * x2));
      Rational x = src.element_of(sum);
      auto [y1, y2] = split_section(d1, d2, x);
      EXPECT_EQ(y1 * y2, x);
      EXPECT_TRUE(sections_contains(d1, y1)) << to_text(d1) << " " << to_string(y1);
      EXPECT_TRUE(sections_contains(d2, y2)) << to_text(d2) << " " << to_string(y2);
    }
  }
}

TEST(DivisorLaws, EquivalenceRelation) {
  gen::Source src(104);
  for (int i = 0; i < 500; ++i) {
    auto a = src.divisor(0.3, true);
    Rational q = src.rational(3), r = src.rational(3);
    auto b = a + divisor_from_rational(q), c = b + divisor_from_rational(r);
    auto ab = classes_equivalent(a, b), bc = classes_equivalent(b, c), ac = classes_equivalent(a, c);
    ASSERT_TRUE(ab && bc && ac);
    EXPECT_TRUE(classes_equivalent(a, a));
    EXPECT_TRUE(classes_equivalent(b, a));
    EXPECT_EQ(a, b + divisor_from_rational(*ab));
    EXPECT_EQ(a, c + divisor_from_rational(*ac));
    EXPECT_GT(*ab, 0);
    auto other = src.divisor(0.3, true);
    EXPECT_EQ(classes_equivalent(a, other).has_value(), class_normalize(a).s == class_normalize(other).s);
  }
}

TEST(DivisorLaws, IdempotentClassesFormASemilattice) {
  gen::Source src(105);
  for (int i = 0; i < 300; ++i) {
    auto s1 = src.prime_set(0.2), s2 = src.prime_set(0.2);
    auto t1 = divisor_from_localization(s1), t2 = divisor_from_localization(s2);
    EXPECT_EQ(divisor_from_localization(set_union(s1, s2)), t1 + t2);
    EXPECT_EQ(class_normalize(t1 + t2).s, set_union(s1, s2));
    EXPECT_TRUE(is_idempotent_class(src.divisor(0.3, true)));
    EXPECT_EQ(t1 + t1, t1);
  }
}

TEST(AdeleLaws, DivisorMapIsAMonoidHomomorphism) {
  gen::Source src(106);
  for (int i = 0; i < 1000; ++i) {
    auto a = src.finite_adele(), b = src.finite_adele();
    EXPECT_EQ(adele_to_divisor(a * b), adele_to_divisor(a) + adele_to_divisor(b));
  }
}

TEST(AdeleLaws, DivisorMapIsSurjectiveOnRepresentableDivisors) {
  gen::Source src(107);
  for (int i = 0; i < 500; ++i) {
    auto d = src.divisor(0.3);
    FiniteAdele::Components comps;
    for (const auto& [p, n] : d.explicit_entries())
      comps.emplace(p, n.is_inf() ? TruncatedPadic::zero(p) : TruncatedPadic::make(p, to_long(n.value()), 1, 4));
    EXPECT_EQ(adele_to_divisor(FiniteAdele::make(std::move(comps))), d);
  }
}

TEST(AdeleLaws, ClassMapIsMultiplicativeAndMatchesPicFromData) {
  gen::Source src(108);
  for (int i = 0; i < 1000; ++i) {
    Adele a = src.adele(), b = src.adele();
    EXPECT_EQ(xq_class(adele_multiply(a, b)), pic_product(xq_class(a), xq_class(b)));
    EXPECT_EQ(xq_class(a), pic_from_data(adele_to_divisor(a.finite), abs(a.infinite)));
  }
}

TEST(PicardLaws, ReconstructionFromSpectra) {
  gen::Source src(109);
  std::map<Integer, int> caps;
  for (long p : gen::kSmallPrimes) caps[p] = 3;
  for (int i = 0; i < 200; ++i) {
    auto s = PrimeSet::of(src.prime_subset(0.3));
    // scales small enough that the window [0, 20] sees some norms
    auto c1 = PicClass::make(s, Rational(src.uniform(1, 20), src.uniform(1, 20)));
    PicClass c2 = src.coin() ? PicClass::make(s, c1.scale() * (src.coin() ? 7 : Rational(1, 7))) : c1;
    if (src.coin(0.3)) c2 = PicClass::make(s, c1.scale() * src.rational(2, false));
    auto s1 = value_spectrum_sample(c1, 20, caps), s2 = value_spectrum_sample(c2, 20, caps);
    EXPECT_EQ(pic_equal(c1, c2), same_elements(s1, s2));
  }
}

TEST(PicardLaws, SpectraOfProductsContainProducts) {
  gen::Source src(110);
  for (int i = 0; i < 100; ++i) {
    auto c1 = PicClass::make(PrimeSet::of(src.prime_subset(0.2)), src.rational(1, false));
    auto c2 = PicClass::make(PrimeSet::of(src.prime_subset(0.2)), src.rational(1, false));
    auto prod = pic_product(c1, c2);
    std::map<Integer, int> caps1, caps2;
    for (const auto& p : c1.s_locus().members()) caps1[p] = 1;
    for (const auto& p : c2.s_locus().members()) caps2[p] = 1;
    auto e1 = value_spectrum_sample(c1, 4, caps1).elements(), e2 = value_spectrum_sample(c2, 4, caps2).elements();
    for (std::size_t a = 0; a < std::min<std::size_t>(e1.size(), 30); ++a)
      for (std::size_t b = 0; b < std::min<std::size_t>(e2.size(), 30); ++b)
        EXPECT_TRUE(spectrum_contains(prod, e1[a] * e2[b]));
  }
}

TEST(PicardLaws, JacobianForgetsThePositiveScale) {
  gen::Source src(111);
  for (int i = 0; i < 500; ++i) {
    auto x = PicClass::make(src.prime_set(0.1), src.coin(0.1) ? Rational(0) : src.rational(3, false));
    auto s = src.prime_set(0.1);
    Rational scale = src.rational(3, false);
    Rational lambda = Rational(src.uniform(1, 1000), src.uniform(1, 1000));
    auto y1 = PicClass::make(s, scale), y2 = PicClass::make(s, scale * lambda);
    EXPECT_EQ(jac_project(pic_product(x, y1)), jac_project(pic_product(x, y2)));
    EXPECT_EQ(jac_project(pic_product(x, y1)), jac_product(jac_project(x), jac_project(y1)));
  }
}

TEST(FrameLaws, ConsistencySurvivesTensor) {
  gen::Source src(112);
  for (int i = 0; i < 300; ++i) {
    Frame f = frame_tensor(src.frame(), src.frame());
    Integer n = src.uniform(1, 100), k = src.uniform(1, 100);
    Rational x = src.element_of(f.divisor());
    EXPECT_EQ(root_eval(f, n, x), k * root_eval(f, n * k, x));
  }
}

TEST(FrameLaws, TightnessIsSurjectivityAtEachLevel) {
  gen::Source src(113);
  for (int i = 0; i < 300; ++i) {
    long p = src.prime();
    long n = src.uniform(-3, 3), excess = src.coin() ? 0 : src.uniform(1, 2);
    auto group = ArithmeticDivisor::make({{p, ExtInt(n)}});
    auto unit = src.padic(p, 8, 0, 0.0);
    auto a = FiniteAdele::make({{p, unit.scaled(rpow(p, n + excess))}});
    bool tight = frame_check_tight(a.components(), group);
    EXPECT_EQ(tight, excess == 0);
    EXPECT_EQ(root_level_surjective(a, group, p, static_cast<int>(src.uniform(1, 3))), tight);
  }
}

TEST(FrameLaws, RootsAreThePsiPairing) {
  // ⟨ρ(1/n), x⟩ = ψ(a_f)(x/n).
  gen::Source src(114);
  for (int i = 0; i < 500; ++i) {
    Frame f = src.frame();
    Integer n = src.uniform(1, 2000);
    Rational x = src.element_of(f.divisor());
    EXPECT_EQ(root_eval(f, n, x), psi_pair(f.multiplier(), x / n));
  }
}

TEST(FrameLaws, FramedIsomorphismIsAnEquivalence) {
  gen::Source src(115);
  for (int i = 0; i < 200; ++i) {
    Frame f = src.frame();
    Rational q = src.rational(2), r = src.rational(2);
    Frame g(f.multiplier().scaled(q, 20), q * f.tau());
    Frame h(g.multiplier().scaled(r, 20), r * g.tau());
    EXPECT_TRUE(pic_framed_class(f, f));
    EXPECT_EQ(pic_framed_class(f, g), pic_framed_class(g, f));
    EXPECT_TRUE(pic_framed_class(f, g) && pic_framed_class(g, h) && pic_framed_class(f, h));
    // Isomorphic frames share the class of their (a_f, τ) adele.
    Adele af{f.multiplier(), f.tau(), std::nullopt}, ah{h.multiplier(), h.tau(), std::nullopt};
    EXPECT_EQ(xq_class(af), xq_class(ah));
    EXPECT_EQ(yq_reduce(af).reduced.infinite, yq_reduce(ah).reduced.infinite);
  }
}

TEST(ExplicitFormulaLaws, TransformIsConjugateSymmetricOnTheCriticalLine) {
  for (const char* text : {"gaussian:T=5,sigma=0.3,center=1", "bump:T=4,omega=2", "triangle:T=5"}) {
    auto g = TestFunction::parse(text);
    for (double gamma : {14.134725, 21.02204, 50.0}) {
      auto up = mellin_hat(g, {0.5, gamma}).value, down = mellin_hat(g, {0.5, -gamma}).value;
      EXPECT_NEAR(std::abs(up - std::conj(down)), 0.0, 1e-12) << text;
    }
  }
}

TEST(ExplicitFormulaLaws, ProductFormulaOnRandomRationals) {
  gen::Source src(116);
  for (int i = 0; i < 1000; ++i) {
    Rational u = src.wide_rational();
    if (u == 1) continue;
    Rational product = 1;
    for (const auto& v : relevant_places(1 - u)) product *= absolute_value(1 - u, v);
    EXPECT_EQ(product, 1);
  }
}
