#include "support.hpp"

#include <gtest/gtest.h>

using namespace ergolab;
using testing_support::circle_dist;
using testing_support::gen;
using testing_support::random_point;
using testing_support::random_system;
using testing_support::uniform;

namespace {

UnipotentAffineMap rotation(const AngleValue& b) { return UnipotentAffineMap(RationalMatrix{{1}}, {b}); }

UnipotentAffineMap skew_shift(const AngleValue& a) {
    return UnipotentAffineMap(RationalMatrix{{1, 0}, {2, 1}}, {a, a});
}

}  // namespace

TEST(AffineMap, RejectsNonUnipotentOrNonInteger) {
    EXPECT_THROW(UnipotentAffineMap(RationalMatrix{{2, 1}, {1, 1}}, {AngleValue(), AngleValue()}), DomainError);
    EXPECT_THROW(UnipotentAffineMap(RationalMatrix{{1, 0}, {1, 1}}, {AngleValue()}), DimensionError);
}

TEST(AffineMap, ApplyExample) {
    auto t = skew_shift(gen("sqrt2"));
    TorusPoint x{AngleValue(Rational(1, 2)), AngleValue(Rational(1, 4))};
    auto y = apply(t, x);
    EXPECT_TRUE(y[0].equal_mod1(gen("sqrt2") + AngleValue(Rational(1, 2))));
    EXPECT_TRUE(y[1].equal_mod1(gen("sqrt2") + AngleValue(Rational(5, 4))));
}

TEST(AffineMap, ClosedFormMatchesIteration) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 4));
        auto t = random_system(rng, d);
        auto x = random_point(rng, d);
        TorusPoint y = x;
        for (long n = 1; n <= 200; ++n) {
            y = apply(t, y);
            if (n % 37 == 0 || n == 200) {
                auto z = iterate_closed_form(t, n, x);
                ASSERT_TRUE(z.equal_mod1(y)) << "n=" << n;
                auto zs = z.shadow(), ys = y.shadow();
                for (std::size_t i = 0; i < d; ++i) EXPECT_LT(circle_dist(zs[i], ys[i]), 1e-12);
            }
        }
    }
}

TEST(AffineMap, InverseAndNegativeIterates) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 4));
        auto t = random_system(rng, d);
        auto x = random_point(rng, d);
        EXPECT_TRUE(apply(t.inverse(), apply(t, x)).equal_mod1(x));
        auto back = iterate_closed_form(t, -7L, iterate_closed_form(t, 7L, x));
        EXPECT_TRUE(back.equal_mod1(x));
        auto p3 = t.power(3);
        EXPECT_TRUE(apply(p3, x).equal_mod1(iterate_closed_form(t, 3L, x)));
    }
}

TEST(ShearReduction, ConjugatesToNormalForm) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 4));
        auto t = random_system(rng, d);
        auto r = reduce_to_shear(t);
        EXPECT_TRUE(is_shear_normal_form(r.shear.normalized));
        auto x = random_point(rng, d);
        EXPECT_TRUE(r.project(apply(t, x)).equal_mod1(apply(r.shear.normalized, r.project(x))));
    }
}

TEST(ShearReduction, NormalFormDetection) {
    auto shear = UnipotentAffineMap(shear_matrix({2}), {gen("sqrt2"), AngleValue()});
    EXPECT_TRUE(is_shear_normal_form(shear));
    auto off = UnipotentAffineMap(shear_matrix({2}), {gen("sqrt2"), AngleValue(Rational(1, 3))});
    EXPECT_FALSE(is_shear_normal_form(off));
    EXPECT_FALSE(is_shear_normal_form(skew_shift(gen("sqrt2"))));
}

TEST(Ergodicity, Examples) {
    EXPECT_FALSE(is_ergodic(rotation(AngleValue(Rational(1, 2)))));
    EXPECT_TRUE(is_ergodic(rotation(gen("sqrt2"))));
    EXPECT_TRUE(is_ergodic(UnipotentAffineMap(shear_matrix({2}), {gen("sqrt2"), AngleValue()})));
    EXPECT_FALSE(is_ergodic(UnipotentAffineMap(shear_matrix({2}), {AngleValue(Rational(1, 3)), gen("sqrt2")})));
    // two blocks sharing the same top translation
    auto twin = UnipotentAffineMap(shear_matrix({2, 2}), {gen("sqrt2"), AngleValue(), gen("sqrt2"), AngleValue()});
    EXPECT_FALSE(is_ergodic(twin));
    auto twin_ok = UnipotentAffineMap(shear_matrix({2, 2}), {gen("sqrt2"), AngleValue(), gen("sqrt3"), AngleValue()});
    EXPECT_TRUE(is_ergodic(twin_ok));
    EXPECT_TRUE(is_ergodic(skew_shift(gen("sqrt2"))));
}

TEST(Ergodicity, AgreesWithBruteForceCharacterSearch) {
    std::mt19937_64 rng(24);
    int nonergodic = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
        auto t = random_system(rng, d, 1);
        bool found = false;
        std::vector<long> m(d, -3);
        while (!found) {
            std::vector<Integer> mi(m.begin(), m.end());
            bool nonzero = std::any_of(m.begin(), m.end(), [](long v) { return v != 0; });
            std::vector<Rational> mr(m.begin(), m.end());
            auto fixed = t.linear().left_apply(mr);
            if (nonzero && fixed == mr && pair_with(mi, t.translation()).is_rational()) found = true;
            std::size_t i = 0;
            while (i < d && ++m[i] > 3) m[i++] = -3;
            if (i == d) break;
        }
        if (found) {
            ++nonergodic;
            EXPECT_FALSE(is_ergodic(t));
        }
        for (unsigned q : {2u, 3u, 5u}) EXPECT_EQ(is_ergodic(t.power(q)), is_ergodic(t));
    }
    EXPECT_GT(nonergodic, 5);
}

TEST(Ergodicity, GenericPointsAreFresh) {
    auto used = gen("sqrt2");
    auto p = sample_generic_point(3);
    std::vector<AngleValue> all(p.coords().begin(), p.coords().end());
    all.push_back(used);
    EXPECT_TRUE(rationally_independent_with_one(all));
    std::mt19937_64 rng(1);
    auto q = sample_generic_point(2, rng);
    for (double v : q.shadow()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}
