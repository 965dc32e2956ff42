#pragma once

// Unipotent affine maps T(x) = A x + b on the d-torus: exact application,
// closed-form iteration, shear normalization and Hahn's ergodicity criterion.

#include "algebra.hpp"
#include "angle.hpp"
#include "matrix.hpp"

#include <random>
#include <vector>

namespace ergolab {

/// A x for an exact matrix and exact (unreduced) coordinates.
inline std::vector<AngleValue> apply_matrix(const RationalMatrix& a, const std::vector<AngleValue>& x) {
    if (a.cols() != x.size()) throw DimensionError("matrix/point dimension mismatch");
    std::vector<AngleValue> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) out[i] += x[j] * a(i, j);
    return out;
}

class UnipotentAffineMap {
  public:
    UnipotentAffineMap() = default;

    UnipotentAffineMap(RationalMatrix a, std::vector<AngleValue> b) : a_(std::move(a)), b_(std::move(b)) {
        if (!a_.square() || a_.rows() == 0) throw DimensionError("linear part must be a nonempty square matrix");
        if (b_.size() != a_.rows()) throw DimensionError("translation has the wrong dimension");
        if (!a_.is_integer()) throw DomainError("linear part must have integer entries");
        auto info = is_unipotent(a_);
        if (!info.unipotent) throw DomainError("linear part is not unipotent");
        index_ = info.index;
        RationalMatrix nil = a_ - RationalMatrix::identity(dim());
        nil_powers_.push_back(RationalMatrix::identity(dim()));
        for (std::size_t k = 1; k <= index_; ++k) nil_powers_.push_back(nil_powers_.back() * nil);
        for (auto& v : b_) v = v.reduced();
    }

    std::size_t dim() const { return a_.rows(); }
    const RationalMatrix& linear() const { return a_; }
    const std::vector<AngleValue>& translation() const { return b_; }
    /// Least k with (A - I)^k = 0.
    std::size_t nilpotency_index() const { return index_; }
    /// (A - I)^j; zero for j >= nilpotency_index().
    RationalMatrix nilpotent_power(std::size_t j) const {
        return j < nil_powers_.size() ? nil_powers_[j] : RationalMatrix(dim(), dim());
    }

    /// v_0 = x, v_j = N^j x + N^{j-1} b, so that T^n x = sum_j C(n, j) v_j.
    std::vector<std::vector<AngleValue>> orbit_basis(const TorusPoint& x) const {
        require_dim(x);
        std::vector<std::vector<AngleValue>> v;
        v.push_back(x.coords());
        for (std::size_t j = 1; j <= index_; ++j) {
            auto nx = apply_matrix(nilpotent_power(j), x.coords());
            auto nb = apply_matrix(nilpotent_power(j - 1), b_);
            for (std::size_t i = 0; i < dim(); ++i) nx[i] += nb[i];
            v.push_back(std::move(nx));
        }
        return v;
    }

    /// T^{-1}(x) = A^{-1} x - A^{-1} b; A^{-1} = sum_j (-N)^j is integer.
    UnipotentAffineMap inverse() const {
        RationalMatrix inv(dim(), dim());
        for (std::size_t j = 0; j < index_; ++j) inv = inv + Rational(j % 2 ? -1 : 1) * nil_powers_[j];
        auto nb = apply_matrix(inv, b_);
        for (auto& v : nb) v = -v;
        return UnipotentAffineMap(inv, nb);
    }

    /// T^q built explicitly: (A^q, sum_{i<q} A^i b).
    UnipotentAffineMap power(unsigned q) const {
        RationalMatrix aq = RationalMatrix::identity(dim());
        RationalMatrix sum(dim(), dim());
        for (unsigned i = 0; i < q; ++i) {
            sum = sum + aq;
            aq = aq * a_;
        }
        return UnipotentAffineMap(aq, apply_matrix(sum, b_));
    }

    void require_dim(const TorusPoint& x) const {
        if (x.dim() != dim()) throw DimensionError("point dimension does not match the map");
    }

  private:
    RationalMatrix a_;
    std::vector<AngleValue> b_;
    std::size_t index_ = 0;
    std::vector<RationalMatrix> nil_powers_;
};

/// A x + b with rational parts reduced into [0, 1).
inline TorusPoint apply(const UnipotentAffineMap& t, const TorusPoint& x) {
    t.require_dim(x);
    auto y = apply_matrix(t.linear(), x.coords());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] + t.translation()[i]).reduced();
    return TorusPoint(std::move(y));
}

/// T^n x = sum_j C(n, j) v_j (see orbit_basis); cost independent of n.
/// Negative n iterates the exact inverse map.
inline TorusPoint iterate_closed_form(const UnipotentAffineMap& t, const Integer& n, const TorusPoint& x) {
    if (n < 0) return iterate_closed_form(t.inverse(), Integer(-n), x);
    auto basis = t.orbit_basis(x);
    std::vector<AngleValue> y(t.dim());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Integer c = binomial(n, j);
        if (c == 0) continue;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += basis[j][i] * c;
    }
    for (auto& v : y) v = v.reduced();
    return TorusPoint(std::move(y));
}

inline TorusPoint iterate_closed_form(const UnipotentAffineMap& t, long n, const TorusPoint& x) {
    return iterate_closed_form(t, Integer(n), x);
}

/// A shear system (J, c) conjugated by a translation into the normal form
/// S_r(x_r1, ..., x_rm) = (x_r1 + b_r, x_r2 + x_r1, ..., x_rm + x_r(m-1)).
struct NormalizedShear {
    std::vector<std::size_t> block_sizes;
    /// Coordinates change as x -> x - offset (equivalently x_old = x_new + offset).
    std::vector<AngleValue> offset;
    /// b_r, the translation on the top coordinate of block r.
    std::vector<AngleValue> tops;
    UnipotentAffineMap normalized;
};

/// Within block r, S(y + a) - a = J y + (J - I) a + c; choosing
/// a_{r,j} = -c_{r,j+1} (and a_{r,m} = 0) cancels the translation below the
/// top coordinate and leaves b_r = c_{r,1}.
inline NormalizedShear normalize_shear(const RationalMatrix& j, const std::vector<AngleValue>& c) {
    auto blocks = shear_blocks(j);
    if (blocks.empty()) throw DomainError("matrix is not in shear normal form");
    if (c.size() != j.rows()) throw DimensionError("translation has the wrong dimension");
    NormalizedShear out;
    out.block_sizes = blocks;
    out.offset.assign(c.size(), AngleValue());
    std::vector<AngleValue> normalized(c.size());
    std::size_t start = 0;
    for (auto m : blocks) {
        for (std::size_t i = 0; i + 1 < m; ++i) out.offset[start + i] = (-c[start + i + 1]).reduced();
        normalized[start] = c[start].reduced();
        out.tops.push_back(normalized[start]);
        start += m;
    }
    out.normalized = UnipotentAffineMap(j, normalized);
    return out;
}

/// True iff the map's linear part is a shear matrix and its translation
/// vanishes (mod 1) below each block's top coordinate.
inline bool is_shear_normal_form(const UnipotentAffineMap& t) {
    auto blocks = shear_blocks(t.linear());
    if (blocks.empty()) return false;
    std::size_t start = 0;
    for (auto m : blocks) {
        for (std::size_t i = 1; i < m; ++i)
            if (!t.translation()[start + i].is_zero_mod1()) return false;
        start += m;
    }
    return true;
}

/// Full reduction of T to normal form: z = P x - offset conjugates
/// T to the normalized shear map (P is a torus epimorphism).
struct ShearReduction {
    UnipotentReduction algebra;
    NormalizedShear shear;

    TorusPoint project(const TorusPoint& x) const {
        auto y = apply_matrix(algebra.p, x.coords());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] - shear.offset[i]).reduced();
        return TorusPoint(std::move(y));
    }
};

inline ShearReduction reduce_to_shear(const UnipotentAffineMap& t) {
    ShearReduction r;
    r.algebra = unipotent_canonical_form(t.linear());
    r.shear = normalize_shear(r.algebra.j, apply_matrix(r.algebra.p, t.translation()));
    return r;
}

/// Z-basis (Hermite form) of the characters fixed by A: {m : A^T m = m}.
inline std::vector<std::vector<Integer>> fixed_character_lattice(const RationalMatrix& a) {
    if (!a.square()) throw DimensionError("fixed characters need a square matrix");
    return integer_kernel(a.transpose() - RationalMatrix::identity(a.rows()));
}

/// m . b for an integer frequency and exact coordinates.
inline AngleValue pair_with(const std::vector<Integer>& m, const std::vector<AngleValue>& b) {
    AngleValue acc;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) acc += b[i] * m[i];
    return acc;
}

/// Hahn's criterion, decided exactly. T is ergodic iff no nonzero fixed
/// character m has m . b rational. With M the lattice basis and G the map
/// from a frequency to the generator coefficients of m . b, that is: G M has
/// trivial kernel, i.e. full column rank over Q. (If m . b = p/q for a fixed
/// m != 0, then q m is a fixed character with chi(b) = 1.)
inline bool is_ergodic(const UnipotentAffineMap& t) {
    auto lattice = fixed_character_lattice(t.linear());
    if (lattice.empty()) return true;
    std::vector<GeneratorId> ids;
    for (const auto& v : t.translation())
        for (const auto& term : v.generator_terms()) ids.push_back(term.first);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < lattice.size()) return false;
    RationalMatrix gm(ids.size(), lattice.size());
    for (std::size_t col = 0; col < lattice.size(); ++col) {
        AngleValue mb = pair_with(lattice[col], t.translation());
        for (std::size_t g = 0; g < ids.size(); ++g) gm(g, col) = mb.generator_coeff(ids[g]);
    }
    return gm.rank() == lattice.size();
}

/// Ergodic and totally ergodic coincide for unipotent affine maps of the
/// torus: for a fixed character m, m . (translation of T^q) = q (m . b) since
/// A^T m = m, and the fixed lattice of A^q equals that of A because
/// I + A + ... + A^{q-1} is invertible over Q when A is unipotent.
inline bool is_totally_ergodic(const UnipotentAffineMap& t) { return is_ergodic(t); }

/// A point whose coordinates are d fresh generators (frac(sqrt p) for unused
/// primes p), hence rationally independent of every generator already in use.
inline TorusPoint sample_generic_point(std::size_t d, GeneratorRegistry& reg = GeneratorRegistry::global()) {
    std::vector<AngleValue> coords;
    for (std::size_t i = 0; i < d; ++i) coords.push_back(AngleValue::generator(reg.mint_next_default()));
    return TorusPoint(std::move(coords));
}

/// Same, minting generator values from a seeded engine.
inline TorusPoint sample_generic_point(std::size_t d, std::mt19937_64& rng,
                                       GeneratorRegistry& reg = GeneratorRegistry::global()) {
    std::vector<AngleValue> coords;
    for (std::size_t i = 0; i < d; ++i) coords.push_back(AngleValue::generator(reg.mint_random(rng)));
    return TorusPoint(std::move(coords));
}

}  // namespace ergolab
