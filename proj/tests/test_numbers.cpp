#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <thread>

using namespace ergolab;
using testing_support::gen;

TEST(Rational, ParsesFractionsDecimalsAndIntegers) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
    EXPECT_EQ(parse_rational(" +7 "), Rational(7));
    EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("abc"), ParseError);
    EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, FloorAndFracOfNegatives) {
    EXPECT_EQ(floor_of(Rational(-1, 3)), Integer(-1));
    EXPECT_EQ(frac_of(Rational(-1, 3)), Rational(2, 3));
    EXPECT_EQ(frac_of(Rational(7, 2)), Rational(1, 2));
}

TEST(Rational, BinomialOfNegativeArgument) {
    EXPECT_EQ(binomial(Integer(-1), 3), Integer(-1));
    EXPECT_EQ(binomial(Integer(5), 2), Integer(10));
    EXPECT_EQ(binomial(Integer(2), 5), Integer(0));
}

TEST(Phase256, AdditionWrapsModuloOne) {
    Phase256 half = phase_from_rational(Rational(1, 2));
    Phase256 sum = half + half;
    EXPECT_TRUE(sum.is_zero());
    EXPECT_EQ(phase_from_rational(Rational(-1, 4)).to_double(), 0.75);
    EXPECT_EQ(phase_from_integer(Integer(-1)), phase_from_integer(pow2(256) - 1));
    EXPECT_EQ(to_integer(phase_from_integer(Integer(12345))), Integer(12345));
}

TEST(Generators, SqrtValuesMatchLibm) {
    auto& reg = GeneratorRegistry::global();
    EXPECT_NEAR(reg.get(reg.resolve("sqrt2")).shadow, std::sqrt(2.0) - 1.0, 3e-16);
    EXPECT_NEAR(reg.get(reg.resolve("sqrt3")).shadow, std::sqrt(3.0) - 1.0, 3e-16);
    EXPECT_NEAR(reg.get(reg.resolve("sqrt11")).shadow, std::sqrt(11.0) - 3.0, 1e-15);
    EXPECT_THROW(reg.resolve("sqrt4"), DomainError);
    EXPECT_THROW(reg.resolve("nosuch"), ParseError);
}

TEST(Generators, NamesAreUniqueAndValuesChecked) {
    GeneratorRegistry reg;
    auto a = reg.mint_double("g", 0.25);
    EXPECT_EQ(reg.mint_double("g", 0.25), a);
    EXPECT_THROW(reg.mint_double("g", 0.5), PreconditionError);
    EXPECT_THROW(reg.mint_double("h", 1.5), DomainError);
}

TEST(Generators, SeededMintingIsReproducible) {
    GeneratorRegistry r1, r2;
    std::mt19937_64 g1(99), g2(99);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(r1.get(r1.mint_random(g1)).value256, r2.get(r2.mint_random(g2)).value256);
}

TEST(Generators, ConcurrentMintingKeepsIdsDense) {
    GeneratorRegistry reg;
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&reg, t] {
            std::mt19937_64 rng(static_cast<std::uint64_t>(t));
            for (int i = 0; i < 50; ++i) reg.mint_random(rng);
        });
    for (auto& th : pool) th.join();
    ASSERT_EQ(reg.size(), 200u);
    for (GeneratorId id = 0; id < 200; ++id) EXPECT_EQ(reg.get(id).id, id);
}

TEST(AngleValue, ArithmeticIsExactOnSymbols) {
    AngleValue a = gen("sqrt2") + AngleValue(Rational(1, 3));
    AngleValue b = a * Rational(3) - gen("sqrt2") * Rational(3);
    EXPECT_TRUE(b.is_rational());
    EXPECT_EQ(b.rational_part(), Rational(1));
    EXPECT_TRUE(b.is_zero_mod1());
    EXPECT_TRUE((a - a).is_zero());
}

TEST(AngleValue, ReductionTouchesOnlyTheRationalPart) {
    AngleValue a = gen("sqrt3") * Rational(5) + AngleValue(Rational(-7, 2));
    AngleValue r = a.reduced();
    EXPECT_EQ(r.rational_part(), Rational(1, 2));
    EXPECT_EQ(r.generator_terms(), a.generator_terms());
    EXPECT_TRUE(a.equal_mod1(r));
}

TEST(AngleValue, ShadowIsRecomputedModOne) {
    AngleValue a = gen("sqrt2") * Rational(3) + AngleValue(Rational(1, 4));
    double expect = std::fmod(3 * (std::sqrt(2.0) - 1) + 0.25, 1.0);
    EXPECT_NEAR(a.shadow(), expect, 1e-15);
    EXPECT_GE(a.shadow(), 0.0);
    EXPECT_LT(a.shadow(), 1.0);
}

TEST(AngleValue, TextRoundTrip) {
    AngleValue a = AngleValue::parse("1/2+sqrt2-3/2*sqrt5");
    EXPECT_EQ(a.to_string(), "1/2+sqrt2-3/2*sqrt5");
    EXPECT_EQ(AngleValue::parse(a.to_string()), a);
    EXPECT_EQ(AngleValue::parse("0").to_string(), "0");
    EXPECT_THROW(AngleValue::parse("1+"), ParseError);
    EXPECT_THROW(AngleValue::parse("2*3"), ParseError);
}

TEST(AngleValue, IndependenceTogetherWithOne) {
    std::vector<AngleValue> ok{gen("sqrt2"), gen("sqrt3") + AngleValue(Rational(1, 2))};
    EXPECT_TRUE(rationally_independent_with_one(ok));
    std::vector<AngleValue> rational{gen("sqrt2"), AngleValue(Rational(1, 2))};
    EXPECT_FALSE(rationally_independent_with_one(rational));
    std::vector<AngleValue> dependent{gen("sqrt2"), gen("sqrt2") * Rational(2) + AngleValue(1L)};
    EXPECT_FALSE(rationally_independent_with_one(dependent));
}

TEST(TorusPoint, CoordinatesDoNotAlias) {
    TorusPoint p{gen("sqrt2"), AngleValue(1L)};
    TorusPoint q = p;
    q[0] += AngleValue(Rational(1, 2));
    EXPECT_NE(p, q);
    EXPECT_EQ(p[0], gen("sqrt2"));
}
