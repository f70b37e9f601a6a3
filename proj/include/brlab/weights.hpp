#pragma once
// Two-weight diagnostics for the bilinear maximal operator: the bilinear
// characteristic of a weight pair over dyadic intervals, closed-form
// one-interval oracles for power weights, and weighted ratio probes along
// width-halving input families.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/operators_bilinear.hpp"
#include "brlab/util.hpp"

namespace brlab {

inline double conjugate_exponent(double pj) {
    return pj / (pj - 1.0);  // +inf for pj = 1 via division
}

// v_w = prod_j w_j^{p/p_j} with 1/p = 1/p1 + 1/p2
inline std::vector<double> product_weight(const std::vector<double>& w1,
                                          const std::vector<double>& w2,
                                          double p1, double p2) {
    const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
    std::vector<double> v(w1.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::pow(w1[i], p / p1) * std::pow(w2[i], p / p2);
    return v;
}

// Characteristic of the pair over the aligned dyadic interval family:
//   sup_Q avg_Q(v_w) * prod_j avg_Q(w_j^{1-p_j'})^{p/p_j'},
// with the j-th factor read as (min_Q w_j)^{-p} when p_j = 1.
inline double ap_characteristic(const torus_grid<1>& g,
                                const std::vector<double>& w1,
                                const std::vector<double>& w2, double p1,
                                double p2, int min_cells = 1) {
    const int n = g.n;
    const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
    const auto vw = product_weight(w1, w2, p1, p2);
    const bool min1 = (p1 == 1.0), min2 = (p2 == 1.0);
    std::vector<double> d1(n, 0.0), d2(n, 0.0);
    for (int i = 0; i < n; ++i) {
        d1[i] = min1 ? w1[i] : std::pow(w1[i], 1.0 - conjugate_exponent(p1));
        d2[i] = min2 ? w2[i] : std::pow(w2[i], 1.0 - conjugate_exponent(p2));
    }
    // level-by-level dyadic aggregation: sums for averages, mins for p_j = 1
    std::vector<double> sv = vw, s1 = d1, s2 = d2;
    double best = 0.0;
    for (int len = 1; len <= n; len *= 2) {
        const int cnt = n / len;
        if (len >= min_cells) {
            for (int q = 0; q < cnt; ++q) {
                const double va = sv[q] / len;
                const double f1 = min1 ? std::pow(s1[q], -p)
                                       : std::pow(s1[q] / len,
                                                  p / conjugate_exponent(p1));
                const double f2 = min2 ? std::pow(s2[q], -p)
                                       : std::pow(s2[q] / len,
                                                  p / conjugate_exponent(p2));
                best = std::max(best, va * f1 * f2);
            }
        }
        if (len == n) break;
        for (int q = 0; q < cnt / 2; ++q) {
            sv[q] = sv[2 * q] + sv[2 * q + 1];
            s1[q] = min1 ? std::min(s1[2 * q], s1[2 * q + 1])
                         : s1[2 * q] + s1[2 * q + 1];
            s2[q] = min2 ? std::min(s2[2 * q], s2[2 * q + 1])
                         : s2[2 * q] + s2[2 * q + 1];
        }
    }
    return best;
}

// Closed-form average of |x|^a over [0, h]; diverges at the a = -1 boundary.
inline double power_average_oracle(double a, double h) {
    if (a <= -1.0) return std::numeric_limits<double>::infinity();
    return std::pow(h, a) / (a + 1.0);
}

// Midpoint-rule average of |x|^a over [0, h] with m cells (half-cell
// offsets, matching grid sampling against a half-cell-shifted center).
inline double power_average_numeric(double a, double h, int m) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
        acc += std::pow((i + 0.5) / m, a);
    return acc / m * std::pow(h, a);
}

// One-interval characteristic of the pair (|x|^{a1}, |x|^{a2}) over [0, h]
// from the closed forms; h-independent whenever finite.
inline double power_pair_oracle(double a1, double a2, double p1, double p2,
                                double h = 1.0) {
    const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
    const double q1 = conjugate_exponent(p1), q2 = conjugate_exponent(p2);
    const double va = power_average_oracle(p * (a1 / p1 + a2 / p2), h);
    const double f1 = std::pow(power_average_oracle(a1 * (1.0 - q1), h),
                               p / q1);
    const double f2 = std::pow(power_average_oracle(a2 * (1.0 - q2), h),
                               p / q2);
    return va * f1 * f2;
}

inline bool power_pair_in_class(double a1, double a2, double p1, double p2) {
    return std::isfinite(power_pair_oracle(a1, a2, p1, p2));
}

// ---------------------------------------------------------------------------
// weighted ratio probes for the dilation-maximal bilinear mean
// ---------------------------------------------------------------------------

struct probe_setup {
    torus_grid<1> g;
    double a1, a2, p1, p2;
    double alpha;
    double center;                 // weight center, half-cell offset
    std::vector<double> w1, w2, vw;
    std::vector<double> rs;        // dilation set
};

inline probe_setup make_probe_setup(int grid_n, double a1, double a2,
                                    int dilations = 64, double alpha = 0.5,
                                    double p1 = 2.0, double p2 = 2.0) {
    probe_setup s{torus_grid<1>{grid_n, 1.0}, a1, a2, p1, p2, alpha,
                  0.5 / grid_n,   {},     {},  {},  {}};
    s.w1.resize(grid_n);
    s.w2.resize(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double d = std::abs(s.g.coord(i) - s.center);
        s.w1[i] = std::pow(d, a1);
        s.w2[i] = std::pow(d, a2);
    }
    s.vw = product_weight(s.w1, s.w2, p1, p2);
    s.rs = geomspace(1.0, grid_n / 4.0, dilations);
    return s;
}

// Gaussian bump with periodic distance.
inline std::vector<double> probe_bump(const torus_grid<1>& g, double center,
                                      double width) {
    std::vector<double> f(g.n);
    for (int i = 0; i < g.n; ++i) {
        double d = g.coord(i) - center + 0.5;
        d -= std::floor(d);
        d -= 0.5;
        f[i] = std::exp(-0.5 * sqr(d / width));
    }
    return f;
}

inline double weighted_l2_norm(const torus_grid<1>& g,
                               const std::vector<double>& f,
                               const std::vector<double>& w) {
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) acc += f[i] * f[i] * w[i];
    return std::sqrt(acc * g.cell_volume());
}

// Dilation-maximal field of the critical-order ball means, inputs
// band-limited to the alias-safe band.
inline std::vector<double> maximal_field(const probe_setup& s,
                                         const std::vector<double>& f,
                                         const std::vector<double>& gg) {
    const int n = s.g.n;
    std::vector<cplx> fc(n), gc(n);
    for (int i = 0; i < n; ++i) {
        fc[i] = cplx{f[i], 0.0};
        gc[i] = cplx{gg[i], 0.0};
    }
    auto fh = s.g.dft(fc);
    auto gh = s.g.dft(gc);
    const double kmax = s.g.band_limit();
    for (int i = 0; i < n; ++i)
        if (std::abs(double(freq_of(i, n))) / s.g.len > kmax) {
            fh[i] = cplx{0.0, 0.0};
            gh[i] = cplx{0.0, 0.0};
        }
    return bilinear_maximal(s.g, fh, gh, s.alpha, s.rs);
}

// L^p(v_w) norm of the maximal field over the products of weighted input
// norms (p from the exponent pair; p = 1 for the (2,2) setup).
inline double weighted_ratio(const probe_setup& s, const std::vector<double>& f,
                             const std::vector<double>& gg) {
    const double p = 1.0 / (1.0 / s.p1 + 1.0 / s.p2);
    const auto bm = maximal_field(s, f, gg);
    double num = 0.0;
    for (int i = 0; i < s.g.n; ++i) num += std::pow(bm[i], p) * s.vw[i];
    num = std::pow(num * s.g.cell_volume(), 1.0 / p);
    const double den =
        weighted_l2_norm(s.g, f, s.w1) * weighted_l2_norm(s.g, gg, s.w2);
    return num / den;
}

struct family_result {
    std::vector<double> ratios;
    std::vector<double> octave_slopes;  // log2 of successive ratio quotients
};

inline family_result finish_family(std::vector<double> ratios) {
    family_result r;
    r.ratios = std::move(ratios);
    for (std::size_t i = 1; i < r.ratios.size(); ++i)
        r.octave_slopes.push_back(std::log2(r.ratios[i] / r.ratios[i - 1]));
    return r;
}

// Width-halving bumps at the weight center in both slots, each normalized
// in its weighted L^2 norm: the ratio should stay flat for an in-class
// exponent pair.
inline family_result centered_family(const probe_setup& s, int levels = 5,
                                     double base_width = 0.03) {
    std::vector<double> ratios;
    for (int k = 0; k < levels; ++k) {
        const double wd = base_width * std::pow(2.0, -k);
        auto f = probe_bump(s.g, s.center, wd);
        auto gg = probe_bump(s.g, s.center, wd);
        const double nf = weighted_l2_norm(s.g, f, s.w1);
        const double ng = weighted_l2_norm(s.g, gg, s.w2);
        for (auto& v : f) v /= nf;
        for (auto& v : gg) v /= ng;
        ratios.push_back(weighted_ratio(s, f, gg));
    }
    return finish_family(std::move(ratios));
}

// Width-halving bump pushed off the center by three widths, plain-L^2
// normalized, against a fixed weighted-normalized second slot: the ratio
// tracks 2^{k (a1 - 1)/2}, so it grows monotonically out of class.
inline family_result edge_family(const probe_setup& s, int levels = 5,
                                 double base_width = 0.03) {
    auto g0 = probe_bump(s.g, s.center, base_width);
    const double ng = weighted_l2_norm(s.g, g0, s.w2);
    for (auto& v : g0) v /= ng;
    std::vector<double> ratios;
    for (int k = 0; k < levels; ++k) {
        const double wd = base_width * std::pow(2.0, -k);
        auto f = probe_bump(s.g, s.center + 3.0 * wd, wd);
        double nf = 0.0;
        for (double v : f) nf += v * v;
        nf = std::sqrt(nf * s.g.cell_volume());
        for (auto& v : f) v /= nf;
        ratios.push_back(weighted_ratio(s, f, g0));
    }
    return finish_family(std::move(ratios));
}

}  // namespace brlab
