#pragma once

// Star-discrepancy lower bounds from anchored boxes [0, t) and [0, t], and the
// exact one-dimensional star discrepancy.

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace ergolab {

enum class DiscrepancyMode { grid, random };

inline std::string to_string(DiscrepancyMode m) { return m == DiscrepancyMode::grid ? "grid" : "random"; }

inline DiscrepancyMode parse_discrepancy_mode(const std::string& s) {
    if (s == "grid") return DiscrepancyMode::grid;
    if (s == "random") return DiscrepancyMode::random;
    throw ParseError("mode must be 'grid' or 'random', got '" + s + "'");
}

struct DiscrepancyResult {
    double estimate = 0.0;  // a lower bound on the star discrepancy
    DiscrepancyMode mode = DiscrepancyMode::grid;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::size_t points = 0;
    std::size_t dim = 0;
};

inline constexpr std::size_t max_discrepancy_dim = 4;
/// Cells in the grid-mode count array, (2 trials + 1)^d.
inline constexpr std::uint64_t max_grid_cells = std::uint64_t{1} << 26;

namespace detail {

inline std::vector<std::vector<double>> reduce_points(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw PreconditionError("discrepancy needs at least one point");
    std::size_t d = points.front().size();
    if (d == 0 || d > max_discrepancy_dim)
        throw DimensionError("discrepancy supports dimensions 1.." + std::to_string(max_discrepancy_dim) + ", got " +
                             std::to_string(d));
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionError("points have inconsistent dimensions");
        std::vector<double> q(d);
        for (std::size_t i = 0; i < d; ++i) {
            if (!std::isfinite(p[i])) throw DomainError("point coordinate is not finite");
            q[i] = p[i] - std::floor(p[i]);
        }
        out.push_back(std::move(q));
    }
    return out;
}

/// Grid anchors t_a = a / trials. Points are binned per axis by key 2a when
/// they sit on t_a (within 1e-12) and 2a + 1 when strictly between t_a and
/// t_{a+1}; then prefix sums give the count of [0, t) and [0, t] at once.
inline double grid_estimate(const std::vector<std::vector<double>>& pts, std::uint64_t trials) {
    std::size_t d = pts.front().size();
    std::uint64_t side = 2 * trials + 1;
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (cells > max_grid_cells / side)
            throw PreconditionError("grid too large: trials=" + std::to_string(trials) + " in dimension " +
                                    std::to_string(d));
        cells *= side;
    }
    std::vector<std::uint64_t> count(cells, 0);
    for (const auto& p : pts) {
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < d; ++i) {
            double u = p[i] * static_cast<double>(trials);
            double k = std::round(u);
            std::uint64_t key = std::fabs(u - k) <= 1e-12 * static_cast<double>(trials)
                                    ? 2 * static_cast<std::uint64_t>(k)
                                    : 2 * static_cast<std::uint64_t>(std::floor(u)) + 1;
            index = index * side + std::min(key, side - 1);
        }
        ++count[index];
    }
    // inclusive prefix sums along every axis
    std::uint64_t stride = 1;
    for (std::size_t axis = 0; axis < d; ++axis) {
        for (std::uint64_t idx = 0; idx < cells; ++idx)
            if ((idx / stride) % side != 0) count[idx] += count[idx - stride];
        stride *= side;
    }
    auto at = [&](const std::vector<std::uint64_t>& key) {
        std::uint64_t index = 0;
        for (auto k : key) index = index * side + k;
        return count[index];
    };
    double n = static_cast<double>(pts.size());
    double best = 0.0;
    std::vector<std::uint64_t> a(d, 1), open(d), closed(d);
    while (true) {
        double vol = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            vol *= static_cast<double>(a[i]) / static_cast<double>(trials);
            open[i] = 2 * a[i] - 1;
            closed[i] = 2 * a[i];
        }
        best = std::max(best, std::fabs(static_cast<double>(at(open)) / n - vol));
        best = std::max(best, std::fabs(static_cast<double>(at(closed)) / n - vol));
        std::size_t i = 0;
        while (i < d && ++a[i] > trials) a[i++] = 1;
        if (i == d) break;
    }
    return best;
}

inline double random_estimate(const std::vector<std::vector<double>>& pts, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads) {
    std::size_t d = pts.front().size();
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> anchors(trials, std::vector<double>(d));
    for (auto& t : anchors)
        for (auto& v : t) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::vector<double> local(trials, 0.0);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const auto& t = anchors[k];
            std::uint64_t open = 0, closed = 0;
            for (const auto& p : pts) {
                bool in_open = true, in_closed = true;
                for (std::size_t i = 0; i < d; ++i) {
                    in_open = in_open && p[i] < t[i];
                    in_closed = in_closed && p[i] <= t[i];
                }
                open += in_open;
                closed += in_closed;
            }
            double vol = 1.0;
            for (double v : t) vol *= v;
            double n = static_cast<double>(pts.size());
            local[k] = std::max(std::fabs(static_cast<double>(open) / n - vol),
                                std::fabs(static_cast<double>(closed) / n - vol));
        }
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    std::size_t per = (trials + threads - 1) / threads;
    for (std::size_t b = 0; b < trials; b += per) pool.emplace_back(work, b, std::min<std::size_t>(trials, b + per));
    for (auto& th : pool) th.join();
    return *std::max_element(local.begin(), local.end());
}

}  // namespace detail

/// Lower bound on the star discrepancy of `points` (coordinates taken mod 1).
/// grid: all anchors with coordinates a/trials, a = 1..trials.
/// random: `trials` uniform anchors from mt19937_64(seed); seed is required.
inline DiscrepancyResult discrepancy_estimate(const std::vector<std::vector<double>>& points, DiscrepancyMode mode,
                                              std::uint64_t trials, std::optional<std::uint64_t> seed = std::nullopt,
                                              unsigned threads = 1) {
    if (trials == 0) throw PreconditionError("trials must be at least 1");
    auto pts = detail::reduce_points(points);
    DiscrepancyResult r;
    r.mode = mode;
    r.trials = trials;
    r.points = pts.size();
    r.dim = pts.front().size();
    if (mode == DiscrepancyMode::grid) {
        r.estimate = detail::grid_estimate(pts, trials);
    } else {
        if (!seed) throw PreconditionError("random discrepancy mode requires a seed");
        r.seed = seed;
        r.estimate = detail::random_estimate(pts, trials, *seed, threads);
    }
    return r;
}

/// Exact D*_N of points in [0, 1): max_i max((i+1)/N - x_(i), x_(i) - i/N)
/// over the sorted points.
inline double star_discrepancy_1d(std::vector<double> xs) {
    if (xs.empty()) throw PreconditionError("discrepancy needs at least one point");
    for (auto& x : xs) x -= std::floor(x);
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        best = std::max(best, static_cast<double>(i + 1) / n - xs[i]);
        best = std::max(best, xs[i] - static_cast<double>(i) / n);
    }
    return best;
}

}  // namespace ergolab
