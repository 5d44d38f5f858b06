// SPDX-License-Identifier: Apache-2.0
//
// Random instance generators and small independent oracles shared by the
// unit tests and the acceptance binary.
#pragma once

#include "chorder/dmc.hpp"
#include "chorder/lgc.hpp"
#include "chorder/noise.hpp"
#include "chorder/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace chorder::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline dmc::StochasticMatrix random_stochastic(Rng& rng, int rows, int cols) {
    numerics::Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        double total = 0.0;
        for (int k = 0; k < cols; ++k) total += (m(i, k) = -std::log(uniform(rng, 1e-12, 1.0)));
        m.row(i) /= total;
    }
    return dmc::StochasticMatrix(m);
}

inline dmc::DeterministicPair random_pair(Rng& rng, int better_in, int better_out, int worse_in, int worse_out) {
    dmc::DeterministicPair p;
    p.output_size = worse_out;
    for (int i = 0; i < worse_in; ++i) p.input_map.push_back(uniform_int(rng, 0, better_in - 1));
    for (int y = 0; y < better_out; ++y) p.output_map.push_back(uniform_int(rng, 0, worse_out - 1));
    return p;
}

inline std::vector<double> random_weights(Rng& rng, int n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) total += (x = -std::log(uniform(rng, 1e-12, 1.0)));
    for (auto& x : w) x /= total;
    return w;
}

/// Random degradation of `channel` with `n_pairs` deterministic pairs.
inline dmc::StochasticMatrix random_degradation(Rng& rng, const dmc::StochasticMatrix& channel, int worse_in,
                                                int worse_out, int n_pairs) {
    std::vector<dmc::DeterministicPair> pairs;
    for (int k = 0; k < n_pairs; ++k)
        pairs.push_back(random_pair(rng, static_cast<int>(channel.inputs()), static_cast<int>(channel.outputs()),
                                    worse_in, worse_out));
    return dmc::degrade(channel, pairs, random_weights(rng, n_pairs));
}

/// Planar convex-hull membership by Caratheodory: the target lies in the hull
/// iff it lies in some triangle (possibly degenerate) of the points.
inline bool in_hull_2d(const std::vector<std::array<double, 2>>& pts, std::array<double, 2> t, double tol) {
    auto on_segment = [&](const std::array<double, 2>& a, const std::array<double, 2>& b) {
        const double dx = b[0] - a[0], dy = b[1] - a[1];
        const double len2 = dx * dx + dy * dy;
        double s = len2 > 0 ? ((t[0] - a[0]) * dx + (t[1] - a[1]) * dy) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        return std::hypot(a[0] + s * dx - t[0], a[1] + s * dy - t[1]) <= tol;
    };
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (on_segment(pts[i], pts[j])) return true;
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto &a = pts[i], &b = pts[j], &c = pts[k];
                const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
                if (std::abs(det) < 1e-15) continue;
                const double l1 = ((t[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (t[1] - a[1])) / det;
                const double l2 = ((b[0] - a[0]) * (t[1] - a[1]) - (t[0] - a[0]) * (b[1] - a[1])) / det;
                if (l1 >= -tol && l2 >= -tol && l1 + l2 <= 1.0 + tol) return true;
            }
        }
    return false;
}

/// Hull oracle for 2x2 inclusion: every 2x2 row-stochastic matrix is the
/// point (P(0|0), P(0|1)); enumerate the 16 deterministic products directly.
inline bool includes_2x2_oracle(const numerics::Matrix& better, const numerics::Matrix& worse, double tol) {
    std::vector<std::array<double, 2>> pts;
    for (int r0 = 0; r0 < 2; ++r0)
        for (int r1 = 0; r1 < 2; ++r1)
            for (int t0 = 0; t0 < 2; ++t0)
                for (int t1 = 0; t1 < 2; ++t1) {
                    const int rmap[2] = {r0, r1};
                    const int tmap[2] = {t0, t1};
                    std::array<double, 2> p{0.0, 0.0};
                    for (int i = 0; i < 2; ++i)
                        for (int y = 0; y < 2; ++y)
                            if (tmap[y] == 0) p[i] += better(rmap[i], y);
                    pts.push_back(p);
                }
    return in_hull_2d(pts, {worse(0, 0), worse(1, 0)}, tol);
}

inline bool bsc_rule(double p, double q) { return std::abs(1 - 2 * q) <= std::abs(1 - 2 * p) + 1e-12; }

/// Random profile on a random uniform grid: a few atoms drawn from a small
/// location pool (so that shared locations are common) and a piecewise-linear
/// density with random bumps that vanish at the grid ends.
inline noise::MonotoneProfile random_profile(Rng& rng) {
    static const double pool[] = {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0};
    const double lo = -uniform(rng, 4.0, 6.0);
    const double hi = uniform(rng, 4.0, 6.0);
    const auto grid = noise::uniform_grid(lo, hi, uniform_int(rng, 40, 120));
    std::vector<double> density(grid.size(), 0.0);
    const int bumps = uniform_int(rng, 0, 3);
    for (int b = 0; b < bumps; ++b) {
        const double c = uniform(rng, lo + 2.5, hi - 2.5), w = uniform(rng, 0.3, 2.0), h = uniform(rng, 0.05, 1.0);
        for (std::size_t i = 0; i < grid.size(); ++i) density[i] += h * std::max(0.0, 1.0 - std::abs(grid[i] - c) / w);
    }
    std::vector<noise::Atom> atoms;
    for (double loc : pool)
        if (uniform(rng) < 0.35) atoms.push_back({loc, uniform(rng, 0.1, 2.0)});
    return noise::MonotoneProfile(grid, density, atoms);
}

inline lgc::SingularSpectrum random_spectrum(Rng& rng, int length) {
    std::vector<double> v(length);
    for (auto& x : v) x = uniform(rng, 0.0, 3.0);
    if (uniform(rng) < 0.3) v.back() = 0.0;
    std::sort(v.begin(), v.end(), std::greater<>());
    return lgc::SingularSpectrum(v);
}

inline numerics::Matrix random_spd(Rng& rng, int n) {
    const numerics::Matrix a = numerics::sample_gaussian_matrix(n, n, rng());
    return a * a.transpose() + 0.5 * numerics::Matrix::Identity(n, n);
}

/// Random positive N x N grid: a few wrapped bumps on a small floor.
inline numerics::Matrix random_torus_pdf(Rng& rng, int n) {
    numerics::Matrix p = numerics::Matrix::Constant(n, n, uniform(rng, 0.0, 0.05));
    const int bumps = uniform_int(rng, 1, 3);
    for (int b = 0; b < bumps; ++b) {
        const int ci = uniform_int(rng, 0, n - 1), ck = uniform_int(rng, 0, n - 1);
        const double w = uniform(rng, 1.0, n / 6.0), h = uniform(rng, 0.2, 1.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const int di = std::min(std::abs(i - ci), n - std::abs(i - ci));
                const int dk = std::min(std::abs(k - ck), n - std::abs(k - ck));
                p(i, k) += h * std::exp(-0.5 * (di * di + dk * dk) / (w * w));
            }
    }
    return p / p.sum();
}

/// Law of (Theta_o + Theta_i, Theta_o) from the gridded law of (Theta_i, Theta_o).
inline numerics::Matrix shear_grid(const numerics::Matrix& joint) {
    const auto n = joint.rows();
    numerics::Matrix out = numerics::Matrix::Zero(n, n);
    for (numerics::Index i = 0; i < n; ++i)
        for (numerics::Index o = 0; o < n; ++o) out((i + o) % n, o) += joint(i, o);
    return out;
}

/// Direct 2-D circular convolution of two N x N grids.
inline numerics::Matrix circular_convolve(const numerics::Matrix& p, const numerics::Matrix& q) {
    const auto n = p.rows();
    // row-major copies keep the inner loop contiguous
    std::vector<double> qr(static_cast<std::size_t>(n * n)), r(static_cast<std::size_t>(n * n), 0.0);
    for (numerics::Index a = 0; a < n; ++a)
        for (numerics::Index b = 0; b < n; ++b) qr[static_cast<std::size_t>(a * n + b)] = q(a, b);
    for (numerics::Index i = 0; i < n; ++i)
        for (numerics::Index k = 0; k < n; ++k) {
            const double w = p(i, k);
            if (w == 0.0) continue;
            for (numerics::Index a = 0; a < n; ++a) {
                const double* src = &qr[static_cast<std::size_t>(((a - i + n) % n) * n)];
                double* dst = &r[static_cast<std::size_t>(a * n)];
                for (numerics::Index b = k; b < n; ++b) dst[b] += w * src[b - k];
                for (numerics::Index b = 0; b < k; ++b) dst[b] += w * src[b - k + n];
            }
        }
    numerics::Matrix out(n, n);
    for (numerics::Index a = 0; a < n; ++a)
        for (numerics::Index b = 0; b < n; ++b) out(a, b) = r[static_cast<std::size_t>(a * n + b)];
    return out;
}

} // namespace chorder::testing
