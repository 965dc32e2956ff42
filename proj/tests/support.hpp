#pragma once

// Shared generators and oracles for the test suite.

#include <ergolab/ergolab.hpp>
#include <ergolab/io.hpp>

#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace ergolab;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline AngleValue gen(const std::string& name) {
    return AngleValue::generator(GeneratorRegistry::global().resolve(name));
}

/// Fraction-free (Bareiss) rank of an integer matrix given as rows.
inline std::size_t bareiss_rank(std::vector<std::vector<Integer>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer v = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
            m[i][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& a) {
    std::vector<std::vector<Integer>> out(a.rows(), std::vector<Integer>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j).get_num();
    return out;
}

/// G U G^{-1} with U unit lower triangular (sparse entries in [-2, 2]) and G a
/// product of elementary shears, so the result is an integer unipotent
/// matrix with a random Jordan structure.
inline RationalMatrix random_unipotent(std::mt19937_64& rng, std::size_t d, int shears = 3) {
    RationalMatrix u = RationalMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (uniform(rng, 0, 1)) u(i, j) = uniform(rng, -2, 2);
    RationalMatrix g = RationalMatrix::identity(d), g_inv = RationalMatrix::identity(d);
    for (int s = 0; s < shears && d > 1; ++s) {
        std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 2));
        if (j >= i) ++j;
        long c = uniform(rng, 0, 1) ? 1 : -1;
        RationalMatrix e = RationalMatrix::identity(d), e_inv = RationalMatrix::identity(d);
        e(i, j) = c;
        e_inv(i, j) = -c;
        g = g * e;
        g_inv = e_inv * g_inv;
    }
    return g * u * g_inv;
}

/// Small rational plus a small combination of sqrt generators.
inline AngleValue random_angle(std::mt19937_64& rng, int max_gens = 2) {
    static const char* names[] = {"sqrt2", "sqrt3", "sqrt5", "sqrt7", "sqrt11"};
    AngleValue v(make_rational(uniform(rng, -7, 7), uniform(rng, 1, 8)));
    int count = static_cast<int>(uniform(rng, 0, max_gens));
    for (int k = 0; k < count; ++k) v += gen(names[uniform(rng, 0, 4)]) * Rational(uniform(rng, -3, 3));
    return v;
}

inline TorusPoint random_point(std::mt19937_64& rng, std::size_t d, int max_gens = 2) {
    std::vector<AngleValue> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(random_angle(rng, max_gens).reduced());
    return TorusPoint(std::move(c));
}

inline UnipotentAffineMap random_system(std::mt19937_64& rng, std::size_t d, int max_gens = 2) {
    std::vector<AngleValue> b;
    for (std::size_t i = 0; i < d; ++i) b.push_back(random_angle(rng, max_gens));
    return UnipotentAffineMap(random_unipotent(rng, d, 2), b);
}

/// Random integer-valued polynomial of degree <= deg with standard
/// coefficients in [-3, 3].
inline IntegerPolynomial random_polynomial(std::mt19937_64& rng, int deg) {
    std::vector<Rational> std_coeffs;
    for (int i = 0; i <= deg; ++i) std_coeffs.emplace_back(uniform(rng, -3, 3));
    return IntegerPolynomial::from_standard(std_coeffs);
}

/// Circle distance between two reals.
inline double circle_dist(double a, double b) { return circle_distance(a, b); }

inline io::json load_fixture(const std::string& name) {
    return io::read_json_file(std::string(ERGOLAB_FIXTURE_DIR) + "/" + name);
}

/// (1/N) sum_{n=first}^{first+N-1} e(R(n)) with R(n) evaluated exactly per n.
inline std::complex<double> direct_weyl(const PhasePolynomial& r, long n_terms, long first = 1) {
    long double re = 0, im = 0;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (long n = first; n < first + n_terms; ++n) {
        long double t = static_cast<long double>(r.value_at(Integer(n)).shadow());
        re += std::cos(two_pi * t);
        im += std::sin(two_pi * t);
    }
    return {static_cast<double>(re / n_terms), static_cast<double>(im / n_terms)};
}

}  // namespace testing_support
