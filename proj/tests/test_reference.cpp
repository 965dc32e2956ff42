#include "support.hpp"

#include <gtest/gtest.h>

using namespace ergolab;
using testing_support::gen;

namespace {

std::vector<Integer> freq(std::initializer_list<long> v) { return std::vector<Integer>(v.begin(), v.end()); }

UnipotentAffineMap skew_shift() {
    return UnipotentAffineMap(RationalMatrix{{1, 0}, {2, 1}}, {gen("sqrt2"), gen("sqrt2")});
}

}  // namespace

TEST(Reference, PolynomialEvaluation) {
    EXPECT_EQ(IntegerPolynomial({0, 1, 2})(3), 9);
    EXPECT_EQ(IntegerPolynomial()(7), 0);
    EXPECT_EQ(IntegerPolynomial({0, 0, 1})(-2), 3);
    EXPECT_EQ(eval_binomial_of_poly(IntegerPolynomial({0, 1, 2}), 2, 3), 36);
    EXPECT_EQ(eval_binomial_of_poly(IntegerPolynomial({0, 1, 2}), 0, -4), 1);
    EXPECT_EQ(eval_binomial_of_poly(IntegerPolynomial({0, 1}), 3, 5), 10);
}

TEST(Reference, IndependenceVerdicts) {
    auto shift = is_independent(PolynomialFamily::parse("n,n+5"));
    ASSERT_FALSE(shift.independent);
    EXPECT_EQ(*shift.witness, freq({1, -1}));
    EXPECT_TRUE(is_independent(PolynomialFamily::parse("n^2+n,n^2")).independent);
    auto constant = is_independent(PolynomialFamily::parse("5"));
    ASSERT_FALSE(constant.independent);
    EXPECT_EQ(*constant.witness, freq({1}));
}

TEST(Reference, Reductions) {
    RationalMatrix a{{1, 0}, {2, 1}};
    auto r = unipotent_canonical_form(a);
    EXPECT_EQ(r.j, (RationalMatrix{{1, 0}, {1, 1}}));
    EXPECT_EQ(r.block_sizes, (std::vector<std::size_t>{2}));
    EXPECT_EQ(r.p * a, r.j * r.p);
    auto id = unipotent_canonical_form(RationalMatrix::identity(3));
    EXPECT_EQ(id.j, RationalMatrix::identity(3));
    EXPECT_EQ(id.p, RationalMatrix::identity(3));
    EXPECT_EQ(id.block_sizes, (std::vector<std::size_t>{1, 1, 1}));
    RationalMatrix four{{1, 0, 0}, {2, 1, 0}, {4, 4, 1}};
    auto r4 = unipotent_canonical_form(four);
    EXPECT_EQ(r4.block_sizes, (std::vector<std::size_t>{3}));
    EXPECT_TRUE((r4.j - RationalMatrix::identity(3)).pow(3).is_zero());
    EXPECT_TRUE(is_unipotent(RationalMatrix{{1, 1}, {0, 1}}).unipotent);
}

TEST(Reference, OrbitsOfTheSkewShift) {
    auto t = skew_shift();
    auto alpha = gen("sqrt2");
    EXPECT_EQ(apply(t, TorusPoint::zero(2)), (TorusPoint{alpha, alpha}));
    TorusPoint x{gen("sqrt3"), gen("sqrt5")};
    EXPECT_TRUE(apply(t, x).equal_mod1(TorusPoint{x[0] + alpha, x[1] + x[0] * Rational(2) + alpha}));
    for (long n : {0L, 1L, 5L, 123L}) {
        auto y = iterate_closed_form(t, n, TorusPoint::zero(2));
        EXPECT_TRUE(y.equal_mod1(TorusPoint{alpha * Rational(n), alpha * Rational(n * n)}));
    }
    EXPECT_EQ(iterate_closed_form(t, 0L, x), x);
    EXPECT_EQ(iterate_closed_form(t, 1L, x), apply(t, x));
}

TEST(Reference, NormalizationOffsets) {
    auto j = shear_matrix({2});
    auto n = normalize_shear(j, {gen("sqrt2"), gen("sqrt3")});
    EXPECT_EQ(n.tops, (std::vector<AngleValue>{gen("sqrt2")}));
    EXPECT_TRUE(n.offset[0].equal_mod1(-gen("sqrt3")));
    auto zero = normalize_shear(j, {AngleValue(), AngleValue()});
    for (const auto& o : zero.offset) EXPECT_TRUE(o.is_zero());
    auto rot = normalize_shear(RationalMatrix::identity(2), {gen("sqrt2"), gen("sqrt5")});
    EXPECT_EQ(rot.tops, (std::vector<AngleValue>{gen("sqrt2"), gen("sqrt5")}));
    for (const auto& o : rot.offset) EXPECT_TRUE(o.is_zero());
}

TEST(Reference, FixedCharacterLattices) {
    auto shear = fixed_character_lattice(RationalMatrix{{1, 0}, {1, 1}});
    EXPECT_EQ(shear, (std::vector<std::vector<Integer>>{freq({1, 0})}));
    EXPECT_EQ(fixed_character_lattice(RationalMatrix::identity(3)).size(), 3u);
    auto block = fixed_character_lattice(shear_matrix({4}));
    ASSERT_EQ(block.size(), 1u);
    EXPECT_EQ(block[0], freq({1, 0, 0, 0}));
}

TEST(Reference, TotalErgodicity) {
    EXPECT_FALSE(is_totally_ergodic(UnipotentAffineMap(RationalMatrix{{1}}, {AngleValue(Rational(1, 2))})));
    EXPECT_TRUE(is_totally_ergodic(skew_shift()));
}

TEST(Reference, GenericPointsAreDisjoint) {
    auto used = gen("sqrt2");
    auto p = sample_generic_point(2), q = sample_generic_point(2);
    std::vector<AngleValue> all{p[0], p[1], q[0], q[1], used};
    EXPECT_TRUE(rationally_independent_with_one(all));
}

TEST(Reference, LatticeElementsAndIdentityComponent) {
    NilElement1 gamma{3, {AngleValue(2L), AngleValue(-1L)}};
    EXPECT_EQ(phi(gamma).g0, NilElement1::identity());
    NilElement1 g0{0, {AngleValue(Rational(1, 3)), gen("sqrt2")}};
    EXPECT_EQ(phi(g0).gamma, NilElement1::identity());
    auto s = conjugated_affine(NilElement1::identity());
    EXPECT_EQ(s.linear(), RationalMatrix::identity(2));
}

TEST(Reference, PhasePolynomials) {
    auto polys = PolynomialFamily::parse("n,n^2");
    EXPECT_TRUE(orbit_phase_polynomial(skew_shift(), TorusPoint{gen("sqrt3"), gen("sqrt5")}, polys, freq({0, 0, 0, 0}))
                    .is_zero_mod1());
    UnipotentAffineMap rot(RationalMatrix{{1}}, {gen("sqrt2")});
    auto r = build_phase_polynomial(rot, TorusPoint{gen("sqrt3")}, PolynomialFamily::parse("n"), freq({1}));
    EXPECT_EQ(r.binomial_coeffs(), (std::vector<AngleValue>{gen("sqrt3"), gen("sqrt2")}));
    EXPECT_TRUE(has_nonconstant_irrational_coeff(PhasePolynomial({AngleValue(), gen("sqrt2")})));
    EXPECT_FALSE(has_nonconstant_irrational_coeff(PhasePolynomial({gen("sqrt2"), AngleValue(Rational(1, 2))})));
}

TEST(Reference, SequenceSums) {
    std::vector<std::vector<double>> zeros(10, std::vector<double>{0.0});
    EXPECT_EQ(weyl_sum_sequence(std::span<const std::vector<double>>(zeros), freq({3}), 10).magnitude, 1.0);
    std::vector<std::vector<double>> halves;
    for (int n = 0; n < 100; ++n) halves.push_back({n / 2.0});
    EXPECT_LT(weyl_sum_sequence(std::span<const std::vector<double>>(halves), freq({1}), 100).magnitude, 1e-15);
    double a = gen("sqrt2").shadow();
    std::vector<std::vector<double>> rot;
    for (int n = 1; n <= 5000; ++n) rot.push_back({std::fmod(n * a, 1.0)});
    double expect = std::fabs(std::sin(std::numbers::pi * 5000 * a)) / (5000 * std::fabs(std::sin(std::numbers::pi * a)));
    EXPECT_NEAR(weyl_sum_sequence(std::span<const std::vector<double>>(rot), freq({1}), 5000).magnitude, expect, 1e-9);
}

TEST(Reference, SquaredRotationAgainstOracle) {
    auto fx = testing_support::load_fixture("counterexample_weyl_1e6.json");
    const auto& o = fx.at("n_squared_alpha");
    PhasePolynomial r({AngleValue(), gen("sqrt2"), gen("sqrt2") * Rational(2)});
    auto w = weyl_sum_phase(r, 1000000);
    EXPECT_LT(w.magnitude, 0.01);
    EXPECT_LT(std::abs(w.value - std::complex<double>(o.at("re").get<double>(), o.at("im").get<double>())), 1e-9);
}

TEST(Reference, DiscrepancyValues) {
    for (std::size_t n : {10u, 100u, 1000u}) {
        std::vector<std::vector<double>> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i) / static_cast<double>(n)});
        double e = discrepancy_estimate(pts, DiscrepancyMode::grid, 4 * n).estimate;
        EXPECT_GE(e, 0.5 / static_cast<double>(n));
        EXPECT_LE(e, 1.0 / static_cast<double>(n) + 1e-12);
    }
    std::vector<std::vector<double>> origin(50, std::vector<double>{0.0, 0.0});
    EXPECT_GE(discrepancy_estimate(origin, DiscrepancyMode::grid, 64).estimate, 1.0 - 1.0 / 64);
    double a = gen("sqrt2").shadow();
    std::vector<double> xs;
    std::vector<std::vector<double>> pts;
    for (int n = 1; n <= 100000; ++n) {
        xs.push_back(std::fmod(n * a, 1.0));
        pts.push_back({xs.back()});
    }
    EXPECT_LT(star_discrepancy_1d(xs), 1e-3);
    EXPECT_LT(discrepancy_estimate(pts, DiscrepancyMode::grid, 4096).estimate, 1e-3);
}

TEST(Reference, ProductsOfIntegrals) {
    auto one = TrigPolynomial::constant(1, 1.0);
    EXPECT_EQ(product_of_integrals({one, one}), std::complex<double>(1.0));
    EXPECT_EQ(product_of_integrals({one, TrigPolynomial::character(freq({1}))}), std::complex<double>(0.0));
    auto f1 = TrigPolynomial::constant(1, 2.0);
    f1.add_term(freq({1}), 1.0);
    EXPECT_EQ(product_of_integrals({f1, TrigPolynomial::constant(1, 3.0)}), std::complex<double>(6.0));
}

TEST(Reference, AveragesOfConstants) {
    auto t = skew_shift();
    auto polys = PolynomialFamily::parse("n,n^2");
    auto one = TrigPolynomial::constant(2, 1.0);
    for (std::uint64_t n : {1ull, 10ull, 1000ull}) {
        auto a = multiple_ergodic_average(t, polys, {one, one}, TorusPoint{gen("sqrt3"), gen("sqrt5")}, n);
        EXPECT_EQ(a.value, std::complex<double>(1.0));
    }
    EXPECT_EQ(l2_distance_to_product(t, polys, {one, one}, 100, 4, 1).l2_estimate, 0.0);
}

TEST(Reference, DependentFamilyIsTheRotationCharacter) {
    UnipotentAffineMap rot(RationalMatrix{{1}}, {gen("sqrt2")});
    TorusPoint x{gen("sqrt3")};
    std::vector<TrigPolynomial> fs{TrigPolynomial::character(freq({2})), TrigPolynomial::character(freq({-1}))};
    auto a = multiple_ergodic_average(rot, PolynomialFamily::parse("n,2n"), fs, x, 777);
    double t = 2 * std::numbers::pi * x[0].shadow();
    EXPECT_LT(std::abs(a.value - std::complex<double>(std::cos(t), std::sin(t))), 1e-15);
}

TEST(Reference, SingleCharacterRotationAverage) {
    UnipotentAffineMap rot(RationalMatrix{{1}}, {gen("sqrt2")});
    auto r = l2_distance_to_product(rot, PolynomialFamily::parse("n"), {TrigPolynomial::character(freq({1}))},
                                    1000000, 8, 5, 4);
    EXPECT_LT(r.l2_estimate, 1e-2);
    double bound = 1.0 / (1e6 * std::fabs(std::sin(std::numbers::pi * gen("sqrt2").shadow())));
    for (const auto& v : r.values) EXPECT_LE(v.magnitude, bound + 1e-12);
}
