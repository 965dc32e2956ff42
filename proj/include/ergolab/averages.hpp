#pragma once

// Multiple ergodic averages
//   A_N(x) = (1/N) sum_{n=0}^{N-1} f_1(T^{p_1(n)} x) ... f_k(T^{p_k(n)} x)
// for trigonometric polynomials f_l, and their L2 distance to prod_l int f_l.

#include "phase.hpp"
#include "torus.hpp"
#include "weyl.hpp"

#include <complex>
#include <map>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace ergolab {

using Frequency = std::vector<Integer>;

/// f(x) = sum_m c_m e(m . x) on T^d.
class TrigPolynomial {
  public:
    TrigPolynomial() = default;
    explicit TrigPolynomial(std::size_t dim) : dim_(dim) {}

    static TrigPolynomial constant(std::size_t dim, std::complex<double> c) {
        TrigPolynomial f(dim);
        f.add_term(Frequency(dim, 0), c);
        return f;
    }

    static TrigPolynomial character(const Frequency& m, std::complex<double> c = 1.0) {
        TrigPolynomial f(m.size());
        f.add_term(m, c);
        return f;
    }

    void add_term(const Frequency& m, std::complex<double> c) {
        if (m.size() != dim_) throw DimensionError("frequency length does not match the torus dimension");
        auto& slot = terms_[m];
        slot += c;
        if (slot == std::complex<double>(0.0, 0.0)) terms_.erase(m);
    }

    std::size_t dim() const { return dim_; }
    const std::map<Frequency, std::complex<double>>& terms() const { return terms_; }

    /// Integral against Haar measure, i.e. the constant term.
    std::complex<double> integral() const {
        auto it = terms_.find(Frequency(dim_, 0));
        return it == terms_.end() ? std::complex<double>() : it->second;
    }

    /// sum |c_m|, an upper bound for sup |f|.
    double sup_bound() const {
        double s = 0.0;
        for (const auto& [m, c] : terms_) s += std::abs(c);
        return s;
    }

    std::complex<double> operator()(std::span<const double> x) const {
        if (x.size() != dim_) throw DimensionError("point dimension does not match the function");
        std::complex<double> acc;
        for (const auto& [m, c] : terms_) acc += c * detail::character(m, x);
        return acc;
    }

  private:
    std::size_t dim_ = 0;
    std::map<Frequency, std::complex<double>> terms_;
};

inline std::complex<double> product_of_integrals(const std::vector<TrigPolynomial>& fs) {
    std::complex<double> p = 1.0;
    for (const auto& f : fs) p *= f.integral();
    return p;
}

struct AverageValue {
    std::complex<double> value;
    double magnitude = 0.0;
    /// Every contributing phase is constant mod 1, so A_N does not depend on N.
    bool constant_in_n = false;
};

namespace detail {

inline void check_average_inputs(const UnipotentAffineMap& t, const PolynomialFamily& polys,
                                 const std::vector<TrigPolynomial>& fs) {
    if (polys.empty()) throw PreconditionError("polynomial family is empty");
    if (fs.size() != polys.size())
        throw PreconditionError("got " + std::to_string(fs.size()) + " functions for " +
                                std::to_string(polys.size()) + " polynomials");
    for (const auto& f : fs)
        if (f.dim() != t.dim()) throw DimensionError("function dimension does not match the system");
}

/// Product of the f_l expanded into characters of T^{dk}, merging equal frequencies.
inline std::map<Frequency, std::complex<double>> expand_product(const std::vector<TrigPolynomial>& fs) {
    std::map<Frequency, std::complex<double>> acc{{Frequency{}, 1.0}};
    for (const auto& f : fs) {
        std::map<Frequency, std::complex<double>> next;
        for (const auto& [prefix, c] : acc)
            for (const auto& [m, cm] : f.terms()) {
                Frequency joined = prefix;
                joined.insert(joined.end(), m.begin(), m.end());
                next[joined] += c * cm;
            }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace detail

/// A_N(x) via the character expansion: each product character contributes
/// c * (1/N) sum_{n=0}^{N-1} e(R_m(n)) with the exact phase R_m.
inline AverageValue multiple_ergodic_average(const UnipotentAffineMap& t, const PolynomialFamily& polys,
                                             const std::vector<TrigPolynomial>& fs, const TorusPoint& x,
                                             std::uint64_t n, unsigned threads = 1) {
    detail::check_average_inputs(t, polys, fs);
    t.require_dim(x);
    if (n == 0) throw PreconditionError("N must be at least 1");
    AverageValue out;
    out.constant_in_n = true;
    std::size_t contributing = 0;
    double single_scale = 0.0;
    for (const auto& [m, c] : detail::expand_product(fs)) {
        if (c == std::complex<double>(0.0, 0.0)) continue;
        auto phase = orbit_phase_polynomial(t, x, polys, m);
        auto w = weyl_sum_phase(phase, n, {threads, 0});
        out.value += c * w.value;
        out.constant_in_n = out.constant_in_n && phase.is_constant_mod1();
        ++contributing;
        single_scale = std::abs(c);
    }
    // one character with a constant phase: |A_N| = |c| exactly
    out.magnitude = (out.constant_in_n && contributing == 1) ? single_scale : std::abs(out.value);
    if (contributing == 0) out.magnitude = 0.0;
    return out;
}

/// A_N(x) by stepping the float orbit directly; used to cross-check the
/// character expansion.
inline std::complex<double> direct_orbit_average(const UnipotentAffineMap& t, const PolynomialFamily& polys,
                                                 const std::vector<TrigPolynomial>& fs, const TorusPoint& x,
                                                 std::uint64_t n) {
    detail::check_average_inputs(t, polys, fs);
    t.require_dim(x);
    if (n == 0) throw PreconditionError("N must be at least 1");
    OrbitStream stream(t, x, polys, 0);
    std::size_t d = t.dim();
    std::vector<double> point;
    kernel::KahanComplex acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        stream.next(point);
        std::complex<double> prod = 1.0;
        for (std::size_t l = 0; l < fs.size(); ++l)
            prod *= fs[l](std::span<const double>(point).subspan(l * d, d));
        acc.add(prod.real(), prod.imag());
    }
    return acc.value() / static_cast<double>(n);
}

struct AverageReport {
    std::uint64_t N = 0;
    std::vector<TorusPoint> samples;
    std::vector<AverageValue> values;
    std::complex<double> product;
    double l2_estimate = 0.0;
    std::uint64_t seed = 0;
};

/// Monte Carlo L2(mu) estimate of A_N - prod int f_l over `samples` generic
/// points whose coordinates are fresh generators drawn from mt19937_64(seed).
/// Samples are evaluated in parallel; the result does not depend on `threads`.
inline AverageReport l2_distance_to_product(const UnipotentAffineMap& t, const PolynomialFamily& polys,
                                            const std::vector<TrigPolynomial>& fs, std::uint64_t n,
                                            std::size_t samples, std::uint64_t seed, unsigned threads = 1,
                                            GeneratorRegistry& reg = GeneratorRegistry::global()) {
    detail::check_average_inputs(t, polys, fs);
    if (samples == 0) throw PreconditionError("samples must be at least 1");
    if (n == 0) throw PreconditionError("N must be at least 1");
    AverageReport report;
    report.N = n;
    report.seed = seed;
    report.product = product_of_integrals(fs);
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) report.samples.push_back(sample_generic_point(t.dim(), rng, reg));
    report.values.resize(samples);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(samples)));
    kernel::for_each_chunk(samples, threads, [&](std::uint64_t s) {
        report.values[s] = multiple_ergodic_average(t, polys, fs, report.samples[s], n, 1);
    });
    double sum = 0.0;
    for (const auto& v : report.values) sum += std::norm(v.value - report.product);
    report.l2_estimate = std::sqrt(sum / static_cast<double>(samples));
    return report;
}

}  // namespace ergolab
