#pragma once

// The two non-connected nilpotent groups G = Z x R^d used as model
// nilmanifolds, their coset representatives, and the affine torus maps that
// their nilrotations are conjugate to.
//
//   NilElement1: (m1,x1,x2)(n1,y1,y2) = (m1+n1, x1+y1, x2+y2+m1 y1), Gamma = Z^3
//   NilElement2: (m1,x1,x2,x3)(n1,y1,y2,y3)
//                = (m1+n1, x1+y1, x2+y2+m1 y1, x3+y3+m1 y2+m1^2 y1/2),
//                Gamma = Z^3 x (1/2)Z

#include "angle.hpp"
#include "torus.hpp"

#include <array>
#include <string>

namespace ergolab {

struct NilElement1 {
    static constexpr std::size_t real_dim = 2;
    Integer m = 0;
    std::array<AngleValue, 2> x{};

    static NilElement1 identity() { return {}; }
    friend bool operator==(const NilElement1& a, const NilElement1& b) { return a.m == b.m && a.x == b.x; }
};

struct NilElement2 {
    static constexpr std::size_t real_dim = 3;
    Integer m = 0;
    std::array<AngleValue, 3> x{};

    static NilElement2 identity() { return {}; }
    friend bool operator==(const NilElement2& a, const NilElement2& b) { return a.m == b.m && a.x == b.x; }
};

inline NilElement1 mul(const NilElement1& g, const NilElement1& h) {
    return {g.m + h.m, {g.x[0] + h.x[0], g.x[1] + h.x[1] + h.x[0] * g.m}};
}

inline NilElement2 mul(const NilElement2& g, const NilElement2& h) {
    Rational half_m2 = Rational(g.m * g.m) / 2;
    return {g.m + h.m,
            {g.x[0] + h.x[0], g.x[1] + h.x[1] + h.x[0] * g.m, g.x[2] + h.x[2] + h.x[1] * g.m + h.x[0] * half_m2}};
}

/// (-m, -x1, m x1 - x2)
inline NilElement1 inv(const NilElement1& g) { return {-g.m, {-g.x[0], g.x[0] * g.m - g.x[1]}}; }

/// (-m, -x1, m x1 - x2, m x2 - m^2 x1 / 2 - x3)
inline NilElement2 inv(const NilElement2& g) {
    Rational half_m2 = Rational(g.m * g.m) / 2;
    return {-g.m, {-g.x[0], g.x[0] * g.m - g.x[1], g.x[1] * g.m - g.x[0] * half_m2 - g.x[2]}};
}

/// g^{-1} h^{-1} g h
template <class G>
G commutator(const G& g, const G& h) {
    return mul(mul(inv(g), inv(h)), mul(g, h));
}

/// Lattice spacing of each real coordinate of Gamma.
inline std::array<Rational, 2> lattice_spacing(const NilElement1&) { return {Rational(1), Rational(1)}; }
inline std::array<Rational, 3> lattice_spacing(const NilElement2&) { return {Rational(1), Rational(1), Rational(1, 2)}; }

template <class G>
bool in_lattice(const G& g) {
    auto spacing = lattice_spacing(g);
    for (std::size_t i = 0; i < G::real_dim; ++i) {
        if (!g.x[i].is_rational()) return false;
        if (!is_integral(g.x[i].rational_part() / spacing[i])) return false;
    }
    return true;
}

/// g = g0 * gamma with g0 in the identity component (m = 0) and gamma in Gamma.
template <class G>
struct CosetRepr {
    G g0;
    G gamma;
};

/// Unique factorization g = g0 gamma. Since g0 has m = 0 the product has no
/// cross terms, so gamma takes g's discrete coordinate and the floor of each
/// real coordinate's rational part on the lattice spacing; g0's rational parts
/// land in [0, spacing). Generator parts stay in g0.
template <class G>
CosetRepr<G> phi(const G& g) {
    auto spacing = lattice_spacing(g);
    CosetRepr<G> out;
    out.gamma.m = g.m;
    for (std::size_t i = 0; i < G::real_dim; ++i) {
        Rational k = Rational(floor_of(g.x[i].rational_part() / spacing[i])) * spacing[i];
        out.gamma.x[i] = AngleValue(k);
        out.g0.x[i] = g.x[i] - AngleValue(k);
    }
    return out;
}

/// psi : G0/Gamma0 -> T^d scales each real coordinate by 1/spacing
/// (identity for the first group, x3 -> 2 x3 for the second).
template <class G>
TorusPoint psi(const G& g0) {
    auto spacing = lattice_spacing(g0);
    std::vector<AngleValue> coords;
    for (std::size_t i = 0; i < G::real_dim; ++i) coords.push_back((g0.x[i] * (1 / spacing[i])).reduced());
    return TorusPoint(std::move(coords));
}

template <class G>
G psi_inverse(const TorusPoint& p) {
    auto spacing = lattice_spacing(G{});
    if (p.dim() != G::real_dim) throw DimensionError("torus point has the wrong dimension for this group");
    G g;
    for (std::size_t i = 0; i < G::real_dim; ++i) g.x[i] = p[i] * spacing[i];
    return g;
}

/// The affine map psi T'_a psi^{-1} on T^d, where T'_a(g0) = a0 gamma g0 gamma^{-1}
/// for a = a0 gamma. The linear part g0 -> gamma g0 gamma^{-1} is read off
/// column by column on the basis vectors of G0; on G0 (m = 0) the group law is
/// plain addition so the translation is psi(a0).
template <class G>
UnipotentAffineMap conjugated_affine(const G& a) {
    auto rep = phi(a);
    auto spacing = lattice_spacing(a);
    constexpr std::size_t d = G::real_dim;
    RationalMatrix lin(d, d);
    G gamma_inv = inv(rep.gamma);
    for (std::size_t j = 0; j < d; ++j) {
        G e;
        e.x[j] = AngleValue(spacing[j]);  // psi^{-1} of the j-th torus basis vector
        G image = mul(mul(rep.gamma, e), gamma_inv);
        for (std::size_t i = 0; i < d; ++i) {
            if (!image.x[i].is_rational()) throw Error("conjugation produced a non-rational entry");
            lin(i, j) = image.x[i].rational_part() / spacing[i];
        }
    }
    return UnipotentAffineMap(lin, psi(rep.g0).coords());
}

/// phi(T_a(g Gamma)), i.e. the identity-component representative of a g.
template <class G>
TorusPoint nil_orbit_step(const G& a, const G& g) {
    return psi(phi(mul(a, g)).g0);
}

}  // namespace ergolab
