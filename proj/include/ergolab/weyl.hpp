#pragma once

// Weyl sums (1/N) sum_n e(R(n)) for exact phase polynomials, evaluated by an
// exact 256-bit finite-difference table, plus the float-sequence variant.

#include "phase.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace ergolab {

struct WeylSumResult {
    std::uint64_t N = 0;
    std::complex<double> value;
    double magnitude = 0.0;
};

struct WeylOptions {
    unsigned threads = 1;
    /// Index of the first term; sums run over n = first, ..., first + N - 1.
    std::int64_t first = 1;
};

namespace kernel {

/// Terms per work unit. Part of the reduction schedule: results depend on it
/// (at the 1e-16 level) but not on the thread count.
inline constexpr std::uint64_t chunk_size = std::uint64_t{1} << 16;

/// e(k / 4096) for k < 4096.
struct UnitTable {
    std::array<double, 4096> re;
    std::array<double, 4096> im;

    static const UnitTable& get() {
        static const UnitTable table = [] {
            UnitTable t;
            const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
            for (std::size_t k = 0; k < 4096; ++k) {
                long double a = two_pi * static_cast<long double>(k) / 4096.0L;
                t.re[k] = static_cast<double>(std::cos(a));
                t.im[k] = static_cast<double>(std::sin(a));
            }
            t.re[0] = 1.0;
            t.im[0] = 0.0;
            return t;
        }();
        return table;
    }
};

/// e(x) for x = top * 2^-64: table lookup on the top 12 bits, Taylor series
/// on the remaining angle (|theta| < 2 pi / 4096). Absolute error ~2e-16.
inline std::complex<double> unit(std::uint64_t top, const UnitTable& table = UnitTable::get()) {
    std::size_t k = static_cast<std::size_t>(top >> 52);
    std::uint64_t rest = top & ((std::uint64_t{1} << 52) - 1);
    double theta = static_cast<double>(rest) * (2.0 * std::numbers::pi / 18446744073709551616.0);
    double t2 = theta * theta;
    double c = 1.0 - t2 * (0.5 - t2 * (1.0 / 24.0 - t2 * (1.0 / 720.0)));
    double s = theta * (1.0 - t2 * (1.0 / 6.0 - t2 * (1.0 / 120.0)));
    double tr = table.re[k], ti = table.im[k];
    return {tr * c - ti * s, ti * c + tr * s};
}

inline std::complex<double> unit(const Phase256& p) { return unit(p.w[3]); }

struct KahanComplex {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    void add(double x, double y) {
        double a = x - cre;
        double t = re + a;
        cre = (t - re) - a;
        re = t;
        double b = y - cim;
        double u = im + b;
        cim = (u - im) - b;
        im = u;
    }
    std::complex<double> value() const { return {re, im}; }
};

/// Pairwise sum in index order.
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
    if (v.empty()) return {};
    if (v.size() == 1) return v[0];
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Finite-difference table of an integer-valued-basis polynomial with
/// coefficients on the 2^-256 grid. D_t(n) = sum_{i>=t} C(n, i-t) A_i;
/// stepping is D_t += D_{t+1} in ascending t. Everything is exact mod 1.
class PhaseCursor {
  public:
    /// `scaled` holds A_i = alpha_i * 2^256 (any representatives).
    PhaseCursor(const std::vector<Integer>& scaled, const Integer& n0) {
        std::size_t deg = scaled.empty() ? 0 : scaled.size() - 1;
        table_.resize(deg + 1);
        std::vector<Integer> c(deg + 1);
        for (std::size_t k = 0; k <= deg; ++k) c[k] = binomial(n0, k);
        for (std::size_t t = 0; t < scaled.size(); ++t) {
            Integer acc = 0;
            for (std::size_t i = t; i < scaled.size(); ++i) acc += c[i - t] * scaled[i];
            table_[t] = phase_from_integer(acc);
        }
    }

    const Phase256& value() const { return table_[0]; }

    void advance() {
        for (std::size_t t = 0; t + 1 < table_.size(); ++t) table_[t] += table_[t + 1];
    }

  private:
    std::vector<Phase256> table_;
};

inline std::vector<Integer> scaled_coeffs(const PhasePolynomial& r) {
    std::vector<Integer> out;
    for (const auto& c : r.binomial_coeffs()) out.push_back(to_integer(c.phase()));
    return out;
}

/// Runs body(chunk_index) for every chunk on `threads` workers.
inline void for_each_chunk(std::uint64_t chunks, unsigned threads, const std::function<void(std::uint64_t)>& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
            try {
                body(c);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

inline WeylSumResult finish(std::uint64_t n, const std::vector<std::complex<double>>& partial) {
    WeylSumResult r;
    r.N = n;
    r.value = pairwise_sum(partial) / static_cast<double>(n);
    r.magnitude = std::abs(r.value);
    return r;
}

}  // namespace kernel

/// (1/N) sum_{n=first}^{first+N-1} e(R(n)). A phase that is constant mod 1
/// is detected symbolically and reported with magnitude exactly 1.
inline WeylSumResult weyl_sum_phase(const PhasePolynomial& r, std::uint64_t n, const WeylOptions& opts = {}) {
    if (n == 0) throw PreconditionError("N must be at least 1");
    if (r.is_constant_mod1()) {
        WeylSumResult out;
        out.N = n;
        out.value = r.is_zero_mod1() ? std::complex<double>(1.0, 0.0) : kernel::unit(r.binomial_coeff(0).phase());
        out.magnitude = 1.0;
        return out;
    }
    auto scaled = kernel::scaled_coeffs(r);
    const auto& table = kernel::UnitTable::get();
    std::uint64_t chunks = (n + kernel::chunk_size - 1) / kernel::chunk_size;
    std::vector<std::complex<double>> partial(chunks);
    kernel::for_each_chunk(chunks, opts.threads, [&](std::uint64_t c) {
        std::uint64_t begin = c * kernel::chunk_size;
        std::uint64_t len = std::min(kernel::chunk_size, n - begin);
        Integer n0 = Integer(static_cast<long>(opts.first)) + Integer(std::to_string(begin));
        kernel::PhaseCursor cursor(scaled, n0);
        kernel::KahanComplex acc;
        for (std::uint64_t i = 0; i < len; ++i) {
            auto e = kernel::unit(cursor.value().w[3], table);
            acc.add(e.real(), e.imag());
            cursor.advance();
        }
        partial[c] = acc.value();
    });
    return kernel::finish(n, partial);
}

namespace detail {

inline std::complex<double> character(const std::vector<Integer>& m, std::span<const double> a) {
    if (a.size() != m.size()) throw DimensionError("sequence point and frequency have different dimensions");
    double t = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        double ai = a[i] - std::floor(a[i]);
        t += m[i].get_d() * ai;
        t -= std::floor(t);
    }
    double angle = 2.0 * std::numbers::pi * t;
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

/// (1/N) sum_{n=1}^{N} e(m . a_n) over float points a_1 = points[0], ...
inline WeylSumResult weyl_sum_sequence(std::span<const std::vector<double>> points, const std::vector<Integer>& m,
                                       std::uint64_t n, const WeylOptions& opts = {}) {
    if (n == 0) throw PreconditionError("N must be at least 1");
    if (points.size() < n)
        throw PreconditionError("sequence has " + std::to_string(points.size()) + " points, fewer than N = " +
                                std::to_string(n));
    std::uint64_t chunks = (n + kernel::chunk_size - 1) / kernel::chunk_size;
    std::vector<std::complex<double>> partial(chunks);
    kernel::for_each_chunk(chunks, opts.threads, [&](std::uint64_t c) {
        std::uint64_t begin = c * kernel::chunk_size;
        std::uint64_t end = std::min(n, begin + kernel::chunk_size);
        kernel::KahanComplex acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            auto e = detail::character(m, points[i]);
            acc.add(e.real(), e.imag());
        }
        partial[c] = acc.value();
    });
    return kernel::finish(n, partial);
}

/// Pull-based variant: source() yields a_1, a_2, ... and nullopt when exhausted.
inline WeylSumResult weyl_sum_sequence(const std::function<std::optional<std::vector<double>>()>& source,
                                       const std::vector<Integer>& m, std::uint64_t n) {
    if (n == 0) throw PreconditionError("N must be at least 1");
    std::vector<std::complex<double>> partial;
    kernel::KahanComplex acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        auto a = source();
        if (!a) throw PreconditionError("sequence ended after " + std::to_string(i) + " points, fewer than N = " +
                                        std::to_string(n));
        auto e = detail::character(m, *a);
        acc.add(e.real(), e.imag());
        if ((i + 1) % kernel::chunk_size == 0 || i + 1 == n) {
            partial.push_back(acc.value());
            acc = {};
        }
    }
    return kernel::finish(n, partial);
}

/// Float orbit points (T^{p_1(n)} x, ..., T^{p_k(n)} x) for n = first, first+1, ...
/// Each coordinate is an exact phase polynomial stepped by its own cursor.
class OrbitStream {
  public:
    OrbitStream(const UnipotentAffineMap& t, const TorusPoint& x, const PolynomialFamily& polys,
                const Integer& first = 1) {
        std::size_t d = t.dim();
        std::size_t total = d * polys.size();
        for (std::size_t c = 0; c < total; ++c) {
            std::vector<Integer> m(total, 0);
            m[c] = 1;
            cursors_.emplace_back(kernel::scaled_coeffs(orbit_phase_polynomial(t, x, polys, m)), first);
        }
    }

    std::size_t dim() const { return cursors_.size(); }

    void next(std::vector<double>& out) {
        out.resize(cursors_.size());
        for (std::size_t i = 0; i < cursors_.size(); ++i) {
            out[i] = cursors_[i].value().to_double();
            cursors_[i].advance();
        }
    }

    std::vector<double> next() {
        std::vector<double> out;
        next(out);
        return out;
    }

  private:
    std::vector<kernel::PhaseCursor> cursors_;
};

}  // namespace ergolab
