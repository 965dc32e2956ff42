#pragma once

// AngleValue: q + sum_g c_g * gamma_g with exact rationals q, c_g and
// registered irrational generators gamma_g. Used both for real coordinates
// (group elements) and for circle coordinates (after reduced()).

#include "generators.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ergolab {

class AngleValue {
  public:
    using Term = std::pair<GeneratorId, Rational>;

    AngleValue() = default;
    AngleValue(const Rational& q) : rational_(q) {}  // NOLINT: implicit on purpose
    AngleValue(long q) : rational_(q) {}              // NOLINT

    static AngleValue generator(GeneratorId id, const Rational& coeff = 1) {
        AngleValue v;
        if (coeff != 0) v.terms_.emplace_back(id, coeff);
        return v;
    }

    const Rational& rational_part() const { return rational_; }
    const std::vector<Term>& generator_terms() const { return terms_; }

    Rational generator_coeff(GeneratorId id) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), id,
                                   [](const Term& t, GeneratorId g) { return t.first < g; });
        return (it != terms_.end() && it->first == id) ? it->second : Rational(0);
    }

    bool is_rational() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty() && rational_ == 0; }
    /// Zero as a point of the circle.
    bool is_zero_mod1() const { return terms_.empty() && is_integral(rational_); }

    /// Rational part reduced into [0, 1); generator part untouched.
    AngleValue reduced() const {
        AngleValue v = *this;
        v.rational_ = frac_of(rational_);
        return v;
    }

    AngleValue& operator+=(const AngleValue& o) {
        rational_ += o.rational_;
        merge(o.terms_, 1);
        return *this;
    }
    AngleValue& operator-=(const AngleValue& o) {
        rational_ -= o.rational_;
        merge(o.terms_, -1);
        return *this;
    }
    AngleValue& operator*=(const Rational& s) {
        if (s == 0) {
            rational_ = 0;
            terms_.clear();
            return *this;
        }
        rational_ *= s;
        for (auto& t : terms_) t.second *= s;
        return *this;
    }

    friend AngleValue operator+(AngleValue a, const AngleValue& b) { return a += b; }
    friend AngleValue operator-(AngleValue a, const AngleValue& b) { return a -= b; }
    friend AngleValue operator*(AngleValue a, const Rational& s) { return a *= s; }
    friend AngleValue operator*(const Rational& s, AngleValue a) { return a *= s; }
    friend AngleValue operator*(AngleValue a, const Integer& s) { return a *= Rational(s); }
    friend AngleValue operator*(const Integer& s, AngleValue a) { return a *= Rational(s); }
    AngleValue operator-() const { return *this * Rational(-1); }

    friend bool operator==(const AngleValue& a, const AngleValue& b) {
        return a.rational_ == b.rational_ && a.terms_ == b.terms_;
    }

    /// Equality as points of R/Z.
    bool equal_mod1(const AngleValue& o) const { return (*this - o).is_zero_mod1(); }

    /// Value mod 1 on the 2^-256 grid: exact for integer generator
    /// coefficients and dyadic rationals, rounded otherwise.
    Phase256 phase(const GeneratorRegistry& reg = GeneratorRegistry::global()) const {
        Integer acc = scaled_round(rational_.get_num(), rational_.get_den(), 256);
        for (const auto& [id, c] : terms_) {
            const Generator& g = reg.get(id);
            if (c.get_den() == 1)
                acc += c.get_num() * g.value256;
            else
                acc += scaled_round(c.get_num() * g.value256, c.get_den(), 0);
        }
        return phase_from_integer(acc);
    }

    /// Float shadow in [0, 1), recomputed from the symbolic value.
    double shadow(const GeneratorRegistry& reg = GeneratorRegistry::global()) const {
        return phase(reg).to_double();
    }

    /// e.g. "1/2+sqrt2-3/2*sqrt5"; "0" for zero.
    std::string to_string(const GeneratorRegistry& reg = GeneratorRegistry::global()) const {
        std::ostringstream os;
        bool first = true;
        if (rational_ != 0 || terms_.empty()) {
            os << rational_.get_str();
            first = false;
        }
        for (const auto& [id, c] : terms_) {
            Rational mag = abs(c);
            if (c < 0)
                os << '-';
            else if (!first)
                os << '+';
            if (mag != 1) os << mag.get_str() << '*';
            os << reg.get(id).name;
            first = false;
        }
        return os.str();
    }

    /// Inverse of to_string; unknown "sqrt<p>" names are registered on demand.
    static AngleValue parse(std::string_view text, GeneratorRegistry& reg = GeneratorRegistry::global()) {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
        if (s.empty()) throw ParseError("empty angle literal");
        AngleValue out;
        std::size_t i = 0;
        while (i < s.size()) {
            int sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                sign = s[i] == '-' ? -1 : 1;
                ++i;
            }
            std::size_t j = i;
            while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
            std::string term = s.substr(i, j - i);
            if (term.empty()) throw ParseError("malformed angle literal '" + s + "'");
            i = j;
            auto star = term.find('*');
            std::string coeff = star == std::string::npos ? "" : term.substr(0, star);
            std::string rest = star == std::string::npos ? term : term.substr(star + 1);
            bool symbol = !rest.empty() && std::isalpha(static_cast<unsigned char>(rest[0]));
            if (symbol) {
                Rational c = coeff.empty() ? Rational(1) : parse_rational(coeff);
                out += generator(reg.resolve(rest), c * sign);
            } else {
                if (star != std::string::npos) throw ParseError("malformed angle term '" + term + "'");
                out += AngleValue(parse_rational(rest) * sign);
            }
        }
        return out;
    }

  private:
    void merge(const std::vector<Term>& other, int sign) {
        if (other.empty()) return;
        std::vector<Term> out;
        out.reserve(terms_.size() + other.size());
        auto a = terms_.begin();
        auto b = other.begin();
        while (a != terms_.end() || b != other.end()) {
            if (b == other.end() || (a != terms_.end() && a->first < b->first)) {
                out.push_back(std::move(*a++));
            } else if (a == terms_.end() || b->first < a->first) {
                out.emplace_back(b->first, sign > 0 ? b->second : Rational(-b->second));
                ++b;
            } else {
                Rational c = sign > 0 ? Rational(a->second + b->second) : Rational(a->second - b->second);
                if (c != 0) out.emplace_back(a->first, std::move(c));
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
    }

    Rational rational_ = 0;
    std::vector<Term> terms_;  // sorted by id, no zero coefficients
};

/// A point of the d-torus with exact coordinates.
class TorusPoint {
  public:
    TorusPoint() = default;
    explicit TorusPoint(std::vector<AngleValue> coords) : coords_(std::move(coords)) {}
    TorusPoint(std::initializer_list<AngleValue> coords) : coords_(coords) {}

    static TorusPoint zero(std::size_t d) { return TorusPoint(std::vector<AngleValue>(d)); }

    std::size_t dim() const { return coords_.size(); }
    const AngleValue& operator[](std::size_t i) const { return coords_[i]; }
    AngleValue& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<AngleValue>& coords() const { return coords_; }

    TorusPoint reduced() const {
        TorusPoint p = *this;
        for (auto& c : p.coords_) c = c.reduced();
        return p;
    }

    std::vector<double> shadow() const {
        std::vector<double> out;
        out.reserve(coords_.size());
        for (const auto& c : coords_) out.push_back(c.shadow());
        return out;
    }

    bool equal_mod1(const TorusPoint& o) const {
        if (o.dim() != dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (!coords_[i].equal_mod1(o.coords_[i])) return false;
        return true;
    }

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.coords_ == b.coords_; }

  private:
    std::vector<AngleValue> coords_;
};

/// True iff {values} together with 1 is rationally independent, i.e. the
/// generator-coefficient vectors are linearly independent over Q.
inline bool rationally_independent_with_one(std::span<const AngleValue> values) {
    std::vector<GeneratorId> ids;
    for (const auto& v : values)
        for (const auto& t : v.generator_terms()) ids.push_back(t.first);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < values.size()) return false;
    std::vector<std::vector<Rational>> rows;
    for (const auto& v : values) {
        std::vector<Rational> row;
        for (auto id : ids) row.push_back(v.generator_coeff(id));
        rows.push_back(std::move(row));
    }
    // Gaussian elimination for rank
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ids.size() && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < ids.size(); ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank == values.size();
}

}  // namespace ergolab
