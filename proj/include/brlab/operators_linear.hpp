// One-slot frequency multipliers on torus grids, the named multiplier
// families used throughout the laboratory, and a periodic Hardy-Littlewood
// maximal operator for sampled data.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/special_functions.hpp"
#include "brlab/symbols.hpp"

namespace brlab {

// Apply a radial multiplier m(|xi|^2) to a coefficient vector; the callable
// receives the squared continuous frequency |k/L|^2 of each bin.
template <int Dim, class Mult>
std::vector<cplx> apply_radial_multiplier(const torus_grid<Dim>& g,
                                          const std::vector<cplx>& fh,
                                          Mult&& mult) {
    std::vector<cplx> out(fh.size());
    for (std::size_t i = 0; i < fh.size(); ++i) {
        if (fh[i] == cplx{0.0, 0.0}) { out[i] = cplx{0.0, 0.0}; continue; }
        const auto idx = g.unravel(i);
        double ksq = 0.0;
        for (int d = 0; d < Dim; ++d) {
            const double f = freq_of(idx[d], g.n) / g.len;
            ksq += f * f;
        }
        out[i] = fh[i] * mult(ksq);
    }
    return out;
}

// ---- named multiplier families (all radial, parametrized by a dilation R)

// smooth frequency projection onto the ball core: psi0(|xi|^2/R^2)
template <int Dim>
std::vector<cplx> smooth_center_multiplier(const torus_grid<Dim>& g,
                                           const std::vector<cplx>& fh,
                                           double R) {
    const double r2 = R * R;
    return apply_radial_multiplier(
        g, fh, [r2](double ksq) { return psi_center(ksq / r2); });
}

// dyadic shell cutoff psi(2^j (1 - |xi|^2/R^2))
template <int Dim>
std::vector<cplx> shell_multiplier(const torus_grid<Dim>& g,
                                   const std::vector<cplx>& fh, int j,
                                   double R) {
    const double r2 = R * R;
    return apply_radial_multiplier(g, fh, [r2, j](double ksq) {
        return psi_band(std::ldexp(1.0 - ksq / r2, j));
    });
}

// fractional ball profile (1 - |xi|^2/R^2)_+^delta ; delta may be negative
// (the grid never lands exactly on the sphere for the dilations we use)
template <int Dim>
std::vector<cplx> ball_power_multiplier(const torus_grid<Dim>& g,
                                        const std::vector<cplx>& fh,
                                        double delta, double R) {
    const double r2 = R * R;
    return apply_radial_multiplier(g, fh, [r2, delta](double ksq) {
        return positive_pow(1.0 - ksq / r2, delta);
    });
}

// log-weighted ball profile (1-u)_+^delta * log(1-u), the parameter
// derivative of ball_power_multiplier in delta
template <int Dim>
std::vector<cplx> ball_power_log_multiplier(const torus_grid<Dim>& g,
                                            const std::vector<cplx>& fh,
                                            double delta, double R) {
    const double r2 = R * R;
    return apply_radial_multiplier(g, fh, [r2, delta](double ksq) {
        const double base = 1.0 - ksq / r2;
        if (base <= 0.0) return 0.0;
        return positive_pow(base, delta) * std::log(base);
    });
}

// inner factor of the subordination integrand on a dyadic shell:
// psi(2^j(1-u)) (1 - u - t^2)_+^{beta-1},  u = |xi|^2/R^2
template <int Dim>
std::vector<cplx> shell_edge_multiplier(const torus_grid<Dim>& g,
                                        const std::vector<cplx>& fh, int j,
                                        double beta, double R, double t) {
    const double r2 = R * R, t2 = t * t;
    return apply_radial_multiplier(g, fh, [=](double ksq) {
        const double u = ksq / r2;
        const double cut = psi_band(std::ldexp(1.0 - u, j));
        if (cut == 0.0) return 0.0;
        return cut * positive_pow(1.0 - u - t2, beta - 1.0);
    });
}

// inner factor for the outer-ring piece of the smooth center (the lone
// non-dyadic band): psi0_outer(u) (1 - u - t^2)_+^{beta-1}
template <int Dim>
std::vector<cplx> ring_edge_multiplier(const torus_grid<Dim>& g,
                                       const std::vector<cplx>& fh,
                                       double beta, double R, double t) {
    const double r2 = R * R, t2 = t * t;
    return apply_radial_multiplier(g, fh, [=](double ksq) {
        const double u = ksq / r2;
        const double cut = psi_center_outer(u);
        if (cut == 0.0) return 0.0;
        return cut * positive_pow(1.0 - u - t2, beta - 1.0);
    });
}

// ---- Hardy-Littlewood maximal operator on sampled periodic data

// Maximal discrete window averages of |f| over symmetric windows of
// half-width w cells, w running over a dyadic-plus-midpoint ladder.
inline std::vector<double> hl_maximal(const torus_grid<1>& g,
                                      const std::vector<double>& f) {
    const int n = g.n;
    std::vector<double> prefix(3 * n + 1, 0.0);
    for (int i = 0; i < 3 * n; ++i)
        prefix[i + 1] = prefix[i] + std::abs(f[i % n]);
    std::vector<int> widths;
    for (int w = 1; w <= n / 2; w *= 2) {
        widths.push_back(w);
        if (3 * w / 2 > w && 3 * w / 2 <= n / 2) widths.push_back(3 * w / 2);
    }
    std::sort(widths.begin(), widths.end());
    widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int c = i + n;  // same cell, offsets stay inside the tripling
        double best = std::abs(f[i]);
        for (int w : widths) {
            const int lo = c - w, hi = c + w + 1;  // 2w+1 cells
            const double avg = (prefix[hi] - prefix[lo]) / double(2 * w + 1);
            best = std::max(best, avg);
        }
        out[i] = best;
    }
    return out;
}

}  // namespace brlab
