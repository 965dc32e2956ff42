#pragma once

// Dense matrices over Q with exact arithmetic.

#include "rational.hpp"

#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ergolab {

class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    RationalMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionError("ragged matrix literal");
            for (long v : row) data_.emplace_back(v);
        }
    }

    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty() || rows.front().empty()) throw DimensionError("matrix must be nonempty");
        RationalMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> row(std::size_t i) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    bool is_integer() const {
        for (const auto& v : data_)
            if (v.get_den() != 1) return false;
        return true;
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
        RationalMatrix c(a.rows_, b.cols_);
        Rational tmp;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j) == 0) continue;
                    tmp = aik * b(k, j);
                    c(i, j) += tmp;
                }
            }
        return c;
    }

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend RationalMatrix operator*(const Rational& s, RationalMatrix a) {
        for (auto& v : a.data_) v *= s;
        return a;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
        std::vector<Rational> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    /// Row vector times matrix.
    std::vector<Rational> left_apply(const std::vector<Rational>& v) const {
        if (v.size() != rows_) throw DimensionError("vector-matrix dimension mismatch");
        std::vector<Rational> out(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
        }
        return out;
    }

    RationalMatrix pow(unsigned k) const {
        if (!square()) throw DimensionError("power of non-square matrix");
        RationalMatrix r = identity(rows_);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// Reduced row echelon form; returns pivot columns through `pivots`.
    RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const {
        RationalMatrix m = *this;
        std::vector<std::size_t> piv;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) continue;
            m.swap_rows(p, r);
            Rational inv = 1 / m(r, c);
            for (std::size_t j = c; j < cols_; ++j) m(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || m(i, c) == 0) continue;
                Rational f = m(i, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
            }
            piv.push_back(c);
            ++r;
        }
        if (pivots) *pivots = std::move(piv);
        return m;
    }

    std::size_t rank() const {
        std::vector<std::size_t> piv;
        rref(&piv);
        return piv.size();
    }

    /// Basis of {v : M v = 0}, one vector per free column, in RREF order.
    std::vector<std::vector<Rational>> kernel() const {
        std::vector<std::size_t> piv;
        RationalMatrix r = rref(&piv);
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : piv) is_pivot[p] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rational> v(cols_);
            v[f] = 1;
            for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Rational determinant() const {
        if (!square()) throw DimensionError("determinant of non-square matrix");
        RationalMatrix m = *this;
        Rational det = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) return 0;
            if (p != c) {
                m.swap_rows(p, c);
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (m(i, c) == 0) continue;
                Rational f = m(i, c) / m(c, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return det;
    }

    /// Inverse via Gauss-Jordan; throws DomainError if singular.
    RationalMatrix inverse() const {
        if (!square()) throw DimensionError("inverse of non-square matrix");
        std::size_t n = rows_;
        RationalMatrix aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = 1;
        }
        std::vector<std::size_t> piv;
        RationalMatrix r = aug.rref(&piv);
        if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("matrix is singular");
        RationalMatrix inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
        return inv;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
            os << ']';
        }
        os << ']';
        return os.str();
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

  private:
    void require_same_shape(const RationalMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace ergolab
