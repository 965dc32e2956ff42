#include "support.hpp"

#include <gtest/gtest.h>

using namespace ergolab;
using testing_support::gen;
using testing_support::random_point;
using testing_support::random_system;
using testing_support::uniform;

namespace {

std::vector<Integer> freq(std::initializer_list<long> v) { return std::vector<Integer>(v.begin(), v.end()); }

TrigPolynomial random_trig(std::mt19937_64& rng, std::size_t d) {
    TrigPolynomial f(d);
    int terms = static_cast<int>(uniform(rng, 1, 3));
    for (int k = 0; k < terms; ++k) {
        Frequency m;
        for (std::size_t i = 0; i < d; ++i) m.emplace_back(uniform(rng, -2, 2));
        f.add_term(m, {uniform(rng, -4, 4) / 4.0, uniform(rng, -4, 4) / 4.0});
    }
    return f;
}

UnipotentAffineMap skew_shift() {
    return UnipotentAffineMap(RationalMatrix{{1, 0}, {2, 1}}, {gen("sqrt2"), gen("sqrt2")});
}

}  // namespace

TEST(TrigPolynomial, EvaluationAndIntegral) {
    TrigPolynomial f = TrigPolynomial::constant(2, 0.5);
    f.add_term(freq({1, 0}), 2.0);
    f.add_term(freq({0, 0}), 0.25);
    EXPECT_EQ(f.integral(), std::complex<double>(0.75, 0.0));
    EXPECT_DOUBLE_EQ(f.sup_bound(), 2.75);
    std::vector<double> x{0.25, 0.9};
    auto v = f(x);
    EXPECT_NEAR(v.real(), 0.75, 1e-15);
    EXPECT_NEAR(v.imag(), 2.0, 1e-15);
    EXPECT_THROW(f.add_term(freq({1}), 1.0), DimensionError);
    EXPECT_EQ(product_of_integrals({f, TrigPolynomial::character(freq({1, 1}))}), std::complex<double>(0.0, 0.0));
}

TEST(Averages, CharacterExpansionMatchesDirectOrbit) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
        auto t = random_system(rng, d);
        auto x = random_point(rng, d);
        auto polys = PolynomialFamily::parse(uniform(rng, 0, 1) ? "n,n^2" : "n^2+n,2n,n^3");
        std::vector<TrigPolynomial> fs;
        for (std::size_t l = 0; l < polys.size(); ++l) fs.push_back(random_trig(rng, d));
        auto fast = multiple_ergodic_average(t, polys, fs, x, 2000);
        auto slow = direct_orbit_average(t, polys, fs, x, 2000);
        EXPECT_LT(std::abs(fast.value - slow), 1e-9);
    }
}

TEST(Averages, LinearInEachFunction) {
    std::mt19937_64 rng(52);
    auto t = skew_shift();
    auto polys = PolynomialFamily::parse("n,n^2");
    auto x = random_point(rng, 2);
    auto f = random_trig(rng, 2), g = random_trig(rng, 2), h = random_trig(rng, 2);
    TrigPolynomial fg(2);
    for (const auto& [m, c] : f.terms()) fg.add_term(m, c);
    for (const auto& [m, c] : g.terms()) fg.add_term(m, 2.0 * c);
    auto a = multiple_ergodic_average(t, polys, {f, h}, x, 3000).value;
    auto b = multiple_ergodic_average(t, polys, {g, h}, x, 3000).value;
    auto ab = multiple_ergodic_average(t, polys, {fg, h}, x, 3000).value;
    EXPECT_LT(std::abs(ab - (a + 2.0 * b)), 1e-12);
}

TEST(Averages, DependentFamilyIsExactlyConstant) {
    UnipotentAffineMap rot(RationalMatrix{{1}}, {gen("sqrt2")});
    auto polys = PolynomialFamily::parse("n,2n");
    std::vector<TrigPolynomial> fs{TrigPolynomial::character(freq({2})), TrigPolynomial::character(freq({-1}))};
    TorusPoint x{gen("sqrt3")};
    for (std::uint64_t n : {1ull, 7ull, 1000ull, 100000ull}) {
        auto a = multiple_ergodic_average(rot, polys, fs, x, n);
        EXPECT_TRUE(a.constant_in_n);
        EXPECT_EQ(a.magnitude, 1.0);
        EXPECT_EQ(std::abs(a.value - product_of_integrals(fs)), 1.0);
    }
}

TEST(Averages, IndependentFamilyDecays) {
    auto t = skew_shift();
    auto polys = PolynomialFamily::parse("n,n^2");
    std::vector<TrigPolynomial> fs{TrigPolynomial::character(freq({0, 1})), TrigPolynomial::character(freq({0, 1}))};
    TorusPoint x{gen("sqrt3"), gen("sqrt5")};
    auto small = multiple_ergodic_average(t, polys, fs, x, 100);
    auto large = multiple_ergodic_average(t, polys, fs, x, 100000);
    EXPECT_FALSE(large.constant_in_n);
    EXPECT_LT(large.magnitude, small.magnitude);
    EXPECT_LT(large.magnitude, 0.05);
}

TEST(Averages, ReportIsReproducibleAcrossThreads) {
    auto t = skew_shift();
    auto polys = PolynomialFamily::parse("n,n^2");
    std::vector<TrigPolynomial> fs{TrigPolynomial::character(freq({0, 1})), TrigPolynomial::character(freq({1, 0}))};
    auto a = l2_distance_to_product(t, polys, fs, 500, 6, 17, 1);
    auto b = l2_distance_to_product(t, polys, fs, 500, 6, 17, 3);
    EXPECT_EQ(a.l2_estimate, b.l2_estimate);
    ASSERT_EQ(a.values.size(), 6u);
    for (std::size_t s = 0; s < 6; ++s) EXPECT_EQ(a.values[s].value, b.values[s].value);
    EXPECT_THROW(l2_distance_to_product(t, polys, fs, 500, 0, 17), PreconditionError);
    EXPECT_THROW(multiple_ergodic_average(t, polys, {fs[0]}, TorusPoint::zero(2), 10), PreconditionError);
}

TEST(Averages, MatchesFrozenOracle) {
    auto fx = testing_support::load_fixture("average_skew_seed7.json");
    auto t = skew_shift();
    auto polys = PolynomialFamily::parse("n,n^2");
    std::vector<TrigPolynomial> fs{TrigPolynomial::character(freq({0, 1})), TrigPolynomial::character(freq({0, 1}))};
    auto report = l2_distance_to_product(t, polys, fs, 1000, 20, 7, 4);
    const auto& samples = fx.at("samples");
    ASSERT_EQ(samples.size(), 20u);
    for (std::size_t s = 0; s < 20; ++s) {
        for (std::size_t i = 0; i < 2; ++i) {
            auto id = report.samples[s][i].generator_terms().at(0).first;
            EXPECT_EQ(GeneratorRegistry::global().get(id).value256,
                      Integer(samples[s].at("point_hex")[i].get<std::string>(), 16));
        }
        const auto& v = samples[s].at("1000");
        std::complex<double> expect(v.at("re").get<double>(), v.at("im").get<double>());
        EXPECT_LT(std::abs(report.values[s].value - expect), 1e-9) << s;
    }
}
