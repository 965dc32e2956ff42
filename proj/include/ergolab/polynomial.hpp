#pragma once

// Integer-valued polynomials in the binomial basis and the independence test
// for polynomial families.

#include "matrix.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab {

/// p(n) = sum_j c_j * C(n, j). Integer coefficients in this basis are exactly
/// the polynomials that take integer values on the integers.
class IntegerPolynomial {
  public:
    IntegerPolynomial() = default;
    explicit IntegerPolynomial(std::vector<Integer> binomial_coeffs) : coeffs_(std::move(binomial_coeffs)) { trim(); }
    IntegerPolynomial(std::initializer_list<long> binomial_coeffs) {
        for (long c : binomial_coeffs) coeffs_.emplace_back(c);
        trim();
    }

    static IntegerPolynomial constant(const Integer& c) { return IntegerPolynomial(std::vector<Integer>{c}); }

    /// The polynomial of degree <= values.size()-1 through (0, v_0), (1, v_1), ...;
    /// its binomial coefficients are the forward differences at 0.
    static IntegerPolynomial interpolate(std::vector<Integer> values) {
        std::vector<Integer> coeffs;
        coeffs.reserve(values.size());
        for (std::size_t j = 0; j < values.size(); ++j) {
            coeffs.push_back(values[0]);
            for (std::size_t i = 0; i + 1 < values.size() - j; ++i) values[i] = values[i + 1] - values[i];
        }
        return IntegerPolynomial(std::move(coeffs));
    }

    /// Standard-basis coefficients a_0..a_d (p(n) = sum a_i n^i). Throws
    /// DomainError unless p is integer-valued.
    static IntegerPolynomial from_standard(const std::vector<Rational>& standard) {
        std::size_t d = standard.empty() ? 0 : standard.size() - 1;
        std::vector<Rational> values(d + 1);
        for (std::size_t n = 0; n <= d; ++n) {
            Rational acc = 0;
            for (std::size_t i = standard.size(); i-- > 0;) acc = acc * Rational(static_cast<long>(n)) + standard[i];
            values[n] = acc;
        }
        std::vector<Integer> coeffs;
        for (std::size_t j = 0; j <= d; ++j) {
            if (!is_integral(values[0]))
                throw DomainError("polynomial is not integer-valued on the integers");
            coeffs.push_back(values[0].get_num());
            for (std::size_t i = 0; i + 1 < values.size() - j; ++i) values[i] = values[i + 1] - values[i];
        }
        return IntegerPolynomial(std::move(coeffs));
    }

    const std::vector<Integer>& binomial_coeffs() const { return coeffs_; }
    Integer coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Integer(0); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    Integer operator()(const Integer& n) const {
        Integer acc = 0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            if (coeffs_[j] != 0) acc += coeffs_[j] * binomial(n, j);
        return acc;
    }
    Integer operator()(long n) const { return (*this)(Integer(n)); }

    /// Standard-basis coefficients a_0..a_d.
    std::vector<Rational> to_standard() const {
        std::vector<Rational> out(coeffs_.size());
        // falling factorial n(n-1)...(n-j+1) / j!, expanded incrementally
        std::vector<Rational> falling{Rational(1)};
        Rational factorial = 1;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            if (j > 0) {
                std::vector<Rational> next(falling.size() + 1);
                Rational shift = -Rational(static_cast<long>(j - 1));
                for (std::size_t i = 0; i < falling.size(); ++i) {
                    next[i + 1] += falling[i];
                    next[i] += falling[i] * shift;
                }
                falling = std::move(next);
                factorial *= static_cast<long>(j);
            }
            if (coeffs_[j] == 0) continue;
            Rational scale = Rational(coeffs_[j]) / factorial;
            for (std::size_t i = 0; i < falling.size(); ++i) out[i] += falling[i] * scale;
        }
        return out;
    }

    /// The polynomial n -> C(p(n), j), integer-valued of degree <= j*deg(p).
    IntegerPolynomial binomial_of(unsigned long j) const {
        if (j == 0) return constant(1);
        std::size_t d = static_cast<std::size_t>(std::max(degree(), 0)) * j;
        std::vector<Integer> values;
        values.reserve(d + 1);
        for (std::size_t n = 0; n <= d; ++n) values.push_back(binomial((*this)(static_cast<long>(n)), j));
        return interpolate(std::move(values));
    }

    IntegerPolynomial& operator+=(const IntegerPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
        trim();
        return *this;
    }
    IntegerPolynomial& operator-=(const IntegerPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
        trim();
        return *this;
    }
    IntegerPolynomial& operator*=(const Integer& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }
    friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
    friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }
    friend IntegerPolynomial operator*(const Integer& s, IntegerPolynomial a) { return a *= s; }
    friend bool operator==(const IntegerPolynomial& a, const IntegerPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Binomial-basis text "[c0,c1,...]".
    std::string to_binomial_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t j = 0; j < coeffs_.size(); ++j) os << (j ? "," : "") << coeffs_[j].get_str();
        os << ']';
        return os.str();
    }

    /// Standard-basis text such as "n^2+3n-1" or "n^2/2+n/2".
    std::string to_string() const {
        auto standard = to_standard();
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = standard.size(); i-- > 0;) {
            const Rational& a = standard[i];
            if (a == 0) continue;
            Integer num = abs(a.get_num());
            if (a < 0)
                os << '-';
            else if (!first)
                os << '+';
            if (i == 0 || num != 1) os << num.get_str();
            if (i >= 1) os << 'n';
            if (i >= 2) os << '^' << i;
            if (a.get_den() != 1) os << '/' << a.get_den().get_str();
            first = false;
        }
        return first ? "0" : os.str();
    }

    /// Accepts the standard form ("n^2+3n-1", "2*n^3-n/2+1/2") or the binomial
    /// form "[c0,c1,...]".
    static IntegerPolynomial parse(std::string_view text) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
        if (s.empty()) throw ParseError("empty polynomial");
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError("unterminated binomial-basis polynomial '" + s + "'");
            std::vector<Integer> coeffs;
            std::string body = s.substr(1, s.size() - 2);
            std::size_t start = 0;
            while (!body.empty() && start <= body.size()) {
                auto comma = body.find(',', start);
                std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                Rational q = parse_rational(item);
                if (!is_integral(q)) throw ParseError("binomial coefficient '" + item + "' is not an integer");
                coeffs.push_back(q.get_num());
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            return IntegerPolynomial(std::move(coeffs));
        }
        return from_standard(parse_standard(s));
    }

  private:
    static std::vector<Rational> parse_standard(const std::string& s) {
        std::vector<Rational> coeffs;
        auto add = [&](std::size_t power, const Rational& c) {
            if (coeffs.size() <= power) coeffs.resize(power + 1);
            coeffs[power] += c;
        };
        auto digits = [&](std::size_t& i) {
            std::size_t b = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            return s.substr(b, i - b);
        };
        std::size_t i = 0;
        bool any = false;
        while (i < s.size()) {
            int sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                sign = s[i] == '-' ? -1 : 1;
                ++i;
            } else if (any) {
                throw ParseError("expected '+' or '-' at position " + std::to_string(i) + " in '" + s + "'");
            }
            Rational coeff = 1;
            bool has_number = false;
            std::string num = digits(i);
            if (!num.empty()) {
                has_number = true;
                coeff = Rational(Integer(num));
                if (i < s.size() && s[i] == '/' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
                    // "a/b" directly followed by n or '*' is a rational coefficient
                    std::size_t j = i + 1;
                    std::string den = digits(j);
                    if (j < s.size() && (s[j] == 'n' || s[j] == '*')) {
                        coeff = make_rational(Integer(num), Integer(den));
                        i = j;
                    }
                }
            }
            if (i < s.size() && s[i] == '*') {
                if (!has_number) throw ParseError("dangling '*' in '" + s + "'");
                ++i;
                if (i >= s.size() || s[i] != 'n') throw ParseError("expected 'n' after '*' in '" + s + "'");
            }
            std::size_t power = 0;
            if (i < s.size() && s[i] == 'n') {
                ++i;
                power = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    std::string e = digits(i);
                    if (e.empty()) throw ParseError("missing exponent in '" + s + "'");
                    power = std::stoul(e);
                }
            } else if (!has_number) {
                throw ParseError("expected a term at position " + std::to_string(i) + " in '" + s + "'");
            }
            if (i < s.size() && s[i] == '/') {
                ++i;
                std::string den = digits(i);
                if (den.empty()) throw ParseError("missing denominator in '" + s + "'");
                if (Integer(den) == 0) throw ParseError("zero denominator in '" + s + "'");
                coeff /= Rational(Integer(den));
            }
            add(power, coeff * sign);
            any = true;
        }
        if (!any) throw ParseError("empty polynomial");
        return coeffs;
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

inline Integer eval(const IntegerPolynomial& p, const Integer& n) { return p(n); }

/// C(p(n), j) as an exact integer.
inline Integer eval_binomial_of_poly(const IntegerPolynomial& p, unsigned long j, const Integer& n) {
    return binomial(p(n), j);
}

/// Ordered, nonempty list p_1..p_k.
class PolynomialFamily {
  public:
    PolynomialFamily() = default;
    explicit PolynomialFamily(std::vector<IntegerPolynomial> polys) : polys_(std::move(polys)) {}
    PolynomialFamily(std::initializer_list<IntegerPolynomial> polys) : polys_(polys) {}

    /// Comma- or semicolon-separated list; commas inside [...] belong to the
    /// binomial form.
    static PolynomialFamily parse(std::string_view text) {
        std::vector<IntegerPolynomial> polys;
        int depth = 0;
        std::string item;
        auto flush = [&] {
            if (item.find_first_not_of(" \t") == std::string::npos) throw ParseError("empty polynomial in family");
            polys.push_back(IntegerPolynomial::parse(item));
            item.clear();
        };
        for (char ch : text) {
            if (ch == '[') ++depth;
            if (ch == ']') --depth;
            if ((ch == ',' || ch == ';') && depth == 0)
                flush();
            else
                item.push_back(ch);
        }
        flush();
        return PolynomialFamily(std::move(polys));
    }

    std::size_t size() const { return polys_.size(); }
    bool empty() const { return polys_.empty(); }
    const IntegerPolynomial& operator[](std::size_t i) const { return polys_[i]; }
    const std::vector<IntegerPolynomial>& polys() const { return polys_; }
    auto begin() const { return polys_.begin(); }
    auto end() const { return polys_.end(); }

    int max_degree() const {
        int d = -1;
        for (const auto& p : polys_) d = std::max(d, p.degree());
        return d;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < polys_.size(); ++i) out += (i ? "," : "") + polys_[i].to_string();
        return out;
    }

  private:
    std::vector<IntegerPolynomial> polys_;
};

struct IndependenceResult {
    bool independent = false;
    /// Coprime integers with positive leading nonzero entry and
    /// sum_j m_j p_j constant; present iff !independent.
    std::optional<std::vector<Integer>> witness;
};

/// Decides whether no nonzero integer vector m makes sum m_j p_j constant, via
/// the exact rank of the k x d matrix of nonconstant binomial coefficients.
inline IndependenceResult is_independent(const PolynomialFamily& family) {
    if (family.empty()) throw PreconditionError("independence test needs a nonempty family");
    std::size_t k = family.size();
    std::size_t d = static_cast<std::size_t>(std::max(family.max_degree(), 0));
    if (d == 0) {
        // every member is constant; m = e_1 is a witness
        std::vector<Integer> w(k, 0);
        w[0] = 1;
        return {false, w};
    }
    // columns = families members, rows = nonconstant coefficients; kernel of this
    // d x k matrix is the set of dependence vectors
    RationalMatrix coeffs(d, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 1; i <= d; ++i) coeffs(i - 1, j) = Rational(family[j].coeff(i));
    auto kernel = coeffs.kernel();
    if (kernel.empty()) return {true, std::nullopt};
    const auto& v = kernel.front();
    Integer den = 1;
    for (const auto& q : v) den = lcm_of(den, q.get_den());
    std::vector<Integer> w;
    Integer g = 0;
    for (const auto& q : v) {
        w.push_back(q.get_num() * (den / q.get_den()));
        g = gcd_of(g, w.back());
    }
    for (auto& x : w) x /= g;
    auto lead = std::find_if(w.begin(), w.end(), [](const Integer& x) { return x != 0; });
    if (lead != w.end() && *lead < 0)
        for (auto& x : w) x = -x;
    return {false, w};
}

}  // namespace ergolab
