#pragma once

// Unipotence tests, the shear (lower Jordan) normal form of a unipotent
// integer matrix, and integer kernels in Hermite form.

#include "matrix.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

namespace ergolab {

struct UnipotenceInfo {
    bool unipotent = false;
    /// Least k >= 1 with (A - I)^k = 0. The identity reports 1: (A - I)^0 = I
    /// is never zero, so k = 0 is not used. Meaningless when !unipotent.
    std::size_t index = 0;
};

inline UnipotenceInfo is_unipotent(const RationalMatrix& a) {
    if (!a.square()) throw DimensionError("unipotence test needs a square matrix");
    std::size_t d = a.rows();
    RationalMatrix nil = a - RationalMatrix::identity(d);
    RationalMatrix power = nil;
    for (std::size_t k = 1; k <= d; ++k) {
        if (power.is_zero()) return {true, k};
        power = power * nil;
    }
    return {false, 0};
}

/// Block-diagonal shear normal form: each block of size m has ones on the
/// diagonal and the subdiagonal, i.e. (x_1, x_2, ..., x_m) -> (x_1, x_2 + x_1, ..., x_m + x_{m-1}).
inline RationalMatrix shear_matrix(const std::vector<std::size_t>& block_sizes) {
    std::size_t d = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
    RationalMatrix j = RationalMatrix::identity(d);
    std::size_t offset = 0;
    for (auto m : block_sizes) {
        for (std::size_t i = 1; i < m; ++i) j(offset + i, offset + i - 1) = 1;
        offset += m;
    }
    return j;
}

/// Block sizes if `j` is in shear normal form, empty otherwise.
inline std::vector<std::size_t> shear_blocks(const RationalMatrix& j) {
    if (!j.square() || j.rows() == 0) return {};
    std::size_t d = j.rows();
    std::vector<std::size_t> blocks;
    std::size_t current = 1;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            const Rational& v = j(r, c);
            bool ok = (r == c) ? v == 1 : (r == c + 1 ? (v == 0 || v == 1) : v == 0);
            if (!ok) return {};
        }
    for (std::size_t r = 1; r < d; ++r) {
        if (j(r, r - 1) == 1) {
            ++current;
        } else {
            blocks.push_back(current);
            current = 1;
        }
    }
    blocks.push_back(current);
    return blocks;
}

struct UnipotentReduction {
    RationalMatrix j;  // shear normal form, integer
    RationalMatrix p;  // integer, det != 0, P A = J P
    std::vector<std::size_t> block_sizes;  // nonincreasing
};

namespace detail {

/// Incremental echelon basis used for greedy complement selection.
class EchelonSpan {
  public:
    explicit EchelonSpan(std::size_t dim) : dim_(dim) {}

    /// Adds v if independent of the current span; returns whether it was added.
    bool insert(std::vector<Rational> v) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& c = v[pivots_[i]];
            if (c == 0) continue;
            Rational f = c;
            for (std::size_t k = 0; k < dim_; ++k) v[k] -= f * rows_[i][k];
        }
        auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
        if (lead == v.end()) return false;
        std::size_t p = static_cast<std::size_t>(lead - v.begin());
        Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (auto& row : rows_) {
            if (row[p] == 0) continue;
            Rational f = row[p];
            for (std::size_t k = 0; k < dim_; ++k) row[k] -= f * v[k];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

  private:
    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Basis of the left kernel {v : v M = 0}, canonicalized to RREF rows.
inline std::vector<std::vector<Rational>> left_kernel_rref(const RationalMatrix& m) {
    auto basis = m.transpose().kernel();
    if (basis.empty()) return basis;
    auto r = RationalMatrix::from_rows(basis).rref();
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(r.row(i));
    return out;
}

}  // namespace detail

/// Computes (J, P) with P A = J P by building Jordan chains of N = A - I
/// acting on row vectors: the rows of block r are t N^{m-1}, ..., t N, t for a
/// chain top t. Chain tops are chosen greedily, longest chains first, from the
/// RREF basis of each left kernel of N^k. Each block of P is then scaled to
/// coprime integers.
inline UnipotentReduction unipotent_canonical_form(const RationalMatrix& a) {
    if (!a.square()) throw DimensionError("canonical form needs a square matrix");
    if (!a.is_integer()) throw DomainError("canonical form needs an integer matrix");
    auto info = is_unipotent(a);
    if (!info.unipotent) throw DomainError("matrix is not unipotent");
    std::size_t d = a.rows();
    RationalMatrix nil = a - RationalMatrix::identity(d);

    std::vector<RationalMatrix> powers{RationalMatrix::identity(d)};
    for (std::size_t k = 1; k <= info.index; ++k) powers.push_back(powers.back() * nil);

    struct Chain {
        std::size_t length;
        std::vector<Rational> top;
    };
    std::vector<Chain> chains;

    for (std::size_t k = info.index; k >= 1; --k) {
        // span of ker N^{k-1} plus the level-k vectors of longer chains
        detail::EchelonSpan span(d);
        if (k > 1)
            for (auto& v : detail::left_kernel_rref(powers[k - 1])) span.insert(std::move(v));
        for (const auto& ch : chains) span.insert(powers[ch.length - k].left_apply(ch.top));
        for (auto& v : detail::left_kernel_rref(powers[k])) {
            if (span.insert(v)) chains.push_back({k, std::move(v)});
        }
    }

    std::vector<std::size_t> sizes;
    std::vector<std::vector<Rational>> rows;
    for (const auto& ch : chains) {
        sizes.push_back(ch.length);
        std::vector<std::vector<Rational>> block(ch.length);
        for (std::size_t i = 0; i < ch.length; ++i) block[i] = powers[ch.length - 1 - i].left_apply(ch.top);
        Integer den = 1;
        for (const auto& r : block)
            for (const auto& q : r) den = lcm_of(den, q.get_den());
        Integer g = 0;
        for (auto& r : block)
            for (auto& q : r) {
                q *= Rational(den);
                g = gcd_of(g, q.get_num());
            }
        for (auto& r : block) {
            for (auto& q : r) q /= Rational(g);
            rows.push_back(std::move(r));
        }
    }

    UnipotentReduction out;
    out.block_sizes = sizes;
    out.j = shear_matrix(sizes);
    out.p = RationalMatrix::from_rows(rows);
    return out;
}

/// True iff the reduction satisfies every documented invariant exactly.
inline bool verify_reduction(const RationalMatrix& a, const UnipotentReduction& r) {
    std::size_t d = a.rows();
    if (r.p.rows() != d || r.p.cols() != d || r.j.rows() != d) return false;
    if (!r.p.is_integer() || r.p.determinant() == 0) return false;
    if (!(r.p * a == r.j * r.p)) return false;
    if (r.block_sizes.empty() || !(shear_matrix(r.block_sizes) == r.j)) return false;
    if (!std::is_sorted(r.block_sizes.rbegin(), r.block_sizes.rend())) return false;
    RationalMatrix nil = r.j - RationalMatrix::identity(d);
    return nil.pow(static_cast<unsigned>(d)).is_zero();
}

/// Z-basis of {m in Z^d : B m = 0} for an integer matrix B, in Hermite normal
/// form (rows; positive pivots, entries above each pivot reduced into
/// [0, pivot)).
inline std::vector<std::vector<Integer>> integer_kernel(const RationalMatrix& b) {
    if (!b.is_integer()) throw DomainError("integer kernel needs an integer matrix");
    std::size_t rows = b.rows(), d = b.cols();
    std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(d));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < d; ++j) m[i][j] = b(i, j).get_num();
    // U tracks unimodular column operations: B U stays column-equivalent to B
    std::vector<std::vector<Integer>> u(d, std::vector<Integer>(d, 0));
    for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t i = 0; i < rows; ++i) m[i][dst] -= f * m[i][src];
        for (std::size_t i = 0; i < d; ++i) u[i][dst] -= f * u[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][x], m[i][y]);
        for (std::size_t i = 0; i < d; ++i) std::swap(u[i][x], u[i][y]);
    };
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < rows && pivot_col < d; ++r) {
        while (true) {
            // smallest nonzero |entry| among columns pivot_col.. in row r
            std::size_t best = d;
            for (std::size_t c = pivot_col; c < d; ++c)
                if (m[r][c] != 0 && (best == d || abs(m[r][c]) < abs(m[r][best]))) best = c;
            if (best == d) break;
            col_swap(pivot_col, best);
            bool done = true;
            for (std::size_t c = pivot_col + 1; c < d; ++c) {
                if (m[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[r][pivot_col].get_mpz_t());
                col_axpy(c, pivot_col, q);
                if (m[r][c] != 0) done = false;
            }
            if (done) {
                ++pivot_col;
                break;
            }
        }
    }
    std::vector<std::vector<Integer>> basis;
    for (std::size_t c = pivot_col; c < d; ++c) {
        std::vector<Integer> v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = u[i][c];
        basis.push_back(std::move(v));
    }
    // row Hermite normal form of the basis
    std::size_t k = basis.size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < k; ++col) {
        while (true) {
            std::size_t best = k;
            for (std::size_t i = row; i < k; ++i)
                if (basis[i][col] != 0 && (best == k || abs(basis[i][col]) < abs(basis[best][col]))) best = i;
            if (best == k) break;
            std::swap(basis[row], basis[best]);
            bool done = true;
            for (std::size_t i = row + 1; i < k; ++i) {
                if (basis[i][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), basis[i][col].get_mpz_t(), basis[row][col].get_mpz_t());
                for (std::size_t j = 0; j < d; ++j) basis[i][j] -= q * basis[row][j];
                if (basis[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (basis[row][col] == 0) continue;
        if (basis[row][col] < 0)
            for (auto& x : basis[row]) x = -x;
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), basis[i][col].get_mpz_t(), basis[row][col].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < d; ++j) basis[i][j] -= q * basis[row][j];
        }
        ++row;
    }
    return basis;
}

}  // namespace ergolab
