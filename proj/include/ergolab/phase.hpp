#pragma once

// Phase polynomials R(n) = m . (T^{p_1(n)} x, ..., T^{p_k(n)} x) with exact
// AngleValue coefficients, and their decomposition R = sum_{r,j} R_rj(n) x_rj
// for shear systems.

#include "angle.hpp"
#include "polynomial.hpp"
#include "torus.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ergolab {

/// Symbols of a normalized shear system. Block r (0-based) has symbols
/// x_{r,0} = b_r (the top translation) and x_{r,j} = j-th coordinate of the
/// block for j = 1..d_r.
struct PhaseDecomposition {
    std::vector<std::size_t> block_sizes;
    std::map<std::pair<std::size_t, std::size_t>, AngleValue> symbols;
    std::map<std::pair<std::size_t, std::size_t>, IntegerPolynomial> terms;  // R_rj, nonzero only
    /// (r0, j0): first block with a nonzero weight and the largest j carrying one.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    /// R_{r0, j0-1}.
    IntegerPolynomial witness_polynomial;
};

class PhasePolynomial {
  public:
    PhasePolynomial() = default;
    /// alpha_i with R(n) = sum_i C(n, i) alpha_i; stored reduced mod 1.
    explicit PhasePolynomial(std::vector<AngleValue> binomial_coeffs) : coeffs_(std::move(binomial_coeffs)) {
        for (auto& c : coeffs_) c = c.reduced();
        while (!coeffs_.empty() && coeffs_.back().is_zero_mod1()) coeffs_.pop_back();
    }

    const std::vector<AngleValue>& binomial_coeffs() const { return coeffs_; }
    AngleValue binomial_coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : AngleValue(); }

    /// -1 when R is zero mod 1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficients of n^i, each reduced mod 1 (valid since n^i is an integer).
    std::vector<AngleValue> standard_coeffs() const {
        std::vector<AngleValue> out(coeffs_.size());
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            std::vector<Integer> unit(j + 1, 0);
            unit[j] = 1;
            auto expansion = IntegerPolynomial(std::move(unit)).to_standard();
            for (std::size_t i = 0; i < expansion.size(); ++i)
                if (expansion[i] != 0) out[i] += coeffs_[j] * expansion[i];
        }
        for (auto& c : out) c = c.reduced();
        return out;
    }

    /// R(n) mod 1, exactly.
    AngleValue value_at(const Integer& n) const {
        AngleValue acc;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            Integer c = binomial(n, i);
            if (c != 0) acc += coeffs_[i] * c;
        }
        return acc.reduced();
    }

    bool is_zero_mod1() const { return coeffs_.empty(); }
    /// Every coefficient of n^i, i >= 1, vanishes mod 1.
    bool is_constant_mod1() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero_mod1()) return false;
        return true;
    }

    std::optional<PhaseDecomposition> decomposition;

  private:
    std::vector<AngleValue> coeffs_;
};

/// Some coefficient of n^i with i >= 1 carries a generator, i.e. is
/// certified irrational.
inline bool has_nonconstant_irrational_coeff(const PhasePolynomial& r) {
    auto standard = r.standard_coeffs();
    for (std::size_t i = 1; i < standard.size(); ++i)
        if (!standard[i].is_rational()) return true;
    return false;
}

namespace detail {

inline void check_frequency(std::size_t d, const PolynomialFamily& polys, const std::vector<Integer>& m) {
    if (polys.empty()) throw PreconditionError("polynomial family is empty");
    if (m.size() != d * polys.size())
        throw DimensionError("frequency has length " + std::to_string(m.size()) + ", expected d*k = " +
                             std::to_string(d * polys.size()));
}

/// C(p_l(n), j) for j = 0..max_j.
inline std::vector<IntegerPolynomial> binomials_of(const IntegerPolynomial& p, std::size_t max_j) {
    std::vector<IntegerPolynomial> out;
    for (std::size_t j = 0; j <= max_j; ++j) out.push_back(p.binomial_of(j));
    return out;
}

inline std::vector<AngleValue> accumulate(std::vector<AngleValue> acc, const IntegerPolynomial& poly,
                                          const AngleValue& weight) {
    const auto& c = poly.binomial_coeffs();
    if (acc.size() < c.size()) acc.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) acc[i] += weight * c[i];
    return acc;
}

}  // namespace detail

/// Phase of frequency m (index l*d + i pairs with coordinate i of
/// T^{p_l(n)} x) along the orbit, for any unipotent affine map. Uses
/// T^q x = sum_j C(q, j) v_j with q = p_l(n).
inline PhasePolynomial orbit_phase_polynomial(const UnipotentAffineMap& t, const TorusPoint& x,
                                              const PolynomialFamily& polys, const std::vector<Integer>& m) {
    t.require_dim(x);
    std::size_t d = t.dim();
    detail::check_frequency(d, polys, m);
    auto basis = t.orbit_basis(x);
    std::vector<AngleValue> coeffs;
    for (std::size_t l = 0; l < polys.size(); ++l) {
        std::vector<Integer> ml(m.begin() + static_cast<std::ptrdiff_t>(l * d),
                                m.begin() + static_cast<std::ptrdiff_t>((l + 1) * d));
        if (std::all_of(ml.begin(), ml.end(), [](const Integer& v) { return v == 0; })) continue;
        auto bin = detail::binomials_of(polys[l], basis.size() - 1);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            AngleValue w = pair_with(ml, basis[j]);
            if (w.is_zero()) continue;
            coeffs = detail::accumulate(std::move(coeffs), bin[j], w);
        }
    }
    return PhasePolynomial(std::move(coeffs));
}

/// Same phase for a system already in shear normal form, additionally
/// exposing R(n) = sum_{r,j} R_rj(n) x_rj. In block r,
/// T^q(x)_{r,j} = sum_{t=0}^{j} C(q, t) x_{r,j-t}.
inline PhasePolynomial build_phase_polynomial(const UnipotentAffineMap& t, const TorusPoint& x,
                                              const PolynomialFamily& polys, const std::vector<Integer>& m) {
    if (!is_shear_normal_form(t)) throw DomainError("system is not in shear normal form");
    t.require_dim(x);
    std::size_t d = t.dim();
    detail::check_frequency(d, polys, m);

    PhaseDecomposition dec;
    dec.block_sizes = shear_blocks(t.linear());
    std::size_t max_block = *std::max_element(dec.block_sizes.begin(), dec.block_sizes.end());
    std::vector<std::vector<IntegerPolynomial>> bins;
    for (const auto& p : polys) bins.push_back(detail::binomials_of(p, max_block));

    std::size_t start = 0;
    for (std::size_t r = 0; r < dec.block_sizes.size(); ++r) {
        std::size_t size = dec.block_sizes[r];
        dec.symbols[{r, 0}] = t.translation()[start];
        for (std::size_t j = 1; j <= size; ++j) dec.symbols[{r, j}] = x[start + j - 1];
        for (std::size_t j = 1; j <= size; ++j)
            for (std::size_t l = 0; l < polys.size(); ++l) {
                const Integer& w = m[l * d + start + j - 1];
                if (w == 0) continue;
                if (!dec.witness || dec.witness->first == r) dec.witness = std::make_pair(r, j);
                for (std::size_t s = 0; s <= j; ++s) {
                    auto& term = dec.terms[{r, j - s}];
                    term += w * bins[l][s];
                }
            }
        start += size;
    }
    for (auto it = dec.terms.begin(); it != dec.terms.end();)
        it = it->second.is_zero() ? dec.terms.erase(it) : std::next(it);

    std::vector<AngleValue> coeffs;
    for (const auto& [key, poly] : dec.terms) coeffs = detail::accumulate(std::move(coeffs), poly, dec.symbols.at(key));
    if (dec.witness) {
        auto key = std::make_pair(dec.witness->first, dec.witness->second - 1);
        auto found = dec.terms.find(key);
        dec.witness_polynomial = found == dec.terms.end() ? IntegerPolynomial() : found->second;
    }
    PhasePolynomial out(std::move(coeffs));
    out.decomposition = std::move(dec);
    return out;
}

/// sum_{r,j} R_rj(n) x_rj reduced mod 1, or nullopt without a decomposition.
inline std::optional<AngleValue> reconstruct_from_decomposition(const PhasePolynomial& r, const Integer& n) {
    if (!r.decomposition) return std::nullopt;
    AngleValue acc;
    for (const auto& [key, poly] : r.decomposition->terms) acc += r.decomposition->symbols.at(key) * poly(n);
    return acc.reduced();
}

}  // namespace ergolab
