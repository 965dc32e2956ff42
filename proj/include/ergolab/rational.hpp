#pragma once

// Exact integers/rationals (GMP) and 256-bit fixed-point circle phases.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ergolab {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (exit code 2 at the CLI).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class DomainError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class ParseError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    if (den == 0) throw DomainError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Representative of q mod 1 in [0, 1).
inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer lcm_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Generalized binomial coefficient C(n, k); n may be negative.
inline Integer binomial(const Integer& n, unsigned long k) {
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

/// Parses "p", "p/q", or a terminating decimal such as "-1.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t\n\r");
        auto e = t.find_last_not_of(" \t\n\r");
        t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw ParseError("empty rational literal");
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        trim(num);
        trim(den);
        if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
        return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot), part = s.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        std::string digits = strip_plus(negative ? whole.substr(1) : whole);
        if (digits.empty()) digits = "0";
        if (!valid_int(digits) || (!part.empty() && !valid_int(part)) || part.find_first_of("+-") != std::string::npos)
            throw ParseError("malformed decimal '" + s + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, part.size());
        Integer num = Integer(digits + part);
        return make_rational(negative ? Integer(-num) : num, scale);
    }
    if (!valid_int(s)) throw ParseError("malformed integer '" + s + "'");
    return Rational(Integer(strip_plus(s)));
}

/// "num/den" with den >= 1 always printed.
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shortest form: "3" or "-3/4".
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Integer pow2(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

/// A point of R/Z as an unsigned multiple of 2^-256 (four little-endian
/// words). Wrap-around addition is exactly addition modulo 1.
struct Phase256 {
    std::uint64_t w[4] = {0, 0, 0, 0};

    Phase256& operator+=(const Phase256& o) {
        unsigned __int128 carry = 0;
        for (int i = 0; i < 4; ++i) {
            carry += static_cast<unsigned __int128>(w[i]) + o.w[i];
            w[i] = static_cast<std::uint64_t>(carry);
            carry >>= 64;
        }
        return *this;
    }
    friend Phase256 operator+(Phase256 a, const Phase256& b) { return a += b; }
    friend bool operator==(const Phase256& a, const Phase256& b) {
        return a.w[0] == b.w[0] && a.w[1] == b.w[1] && a.w[2] == b.w[2] && a.w[3] == b.w[3];
    }
    bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }

    /// Value in [0, 1) rounded to double.
    double to_double() const {
        double x = std::ldexp(static_cast<double>(w[3]), -64) + std::ldexp(static_cast<double>(w[2]), -128);
        // within half an ulp of 1 rounds up; that is 0 on the circle
        return x >= 1.0 ? 0.0 : x;
    }
};

/// z mod 2^256 (works for negative z).
inline Phase256 phase_from_integer(const Integer& z) {
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), 256);
    Phase256 p;
    std::size_t count = 0;
    mpz_export(p.w, &count, -1, sizeof(std::uint64_t), 0, 0, r.get_mpz_t());
    return p;
}

inline Integer to_integer(const Phase256& p) {
    Integer r;
    mpz_import(r.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, p.w);
    return r;
}

/// Rounds (num / den) * 2^shift to the nearest integer (ties up).
inline Integer scaled_round(const Integer& num, const Integer& den, unsigned long shift) {
    Integer scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), shift);
    Integer twice = 2 * scaled + den;
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), Integer(2 * den).get_mpz_t());
    return r;
}

/// q mod 1 rounded to the 2^-256 grid.
inline Phase256 phase_from_rational(const Rational& q) {
    return phase_from_integer(scaled_round(q.get_num(), q.get_den(), 256));
}

/// Distance on R/Z between two reals.
inline double circle_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 1.0);
    return d > 0.5 ? 1.0 - d : d;
}

}  // namespace ergolab
