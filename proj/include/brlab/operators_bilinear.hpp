// Bilinear frequency-symbol application on the 1-d torus, the maximal and
// square-function forms built from it, and the factorized evaluation path
// that reproduces shell pieces as weighted products of one-slot operators.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/operators_linear.hpp"
#include "brlab/special_functions.hpp"
#include "brlab/symbols.hpp"

namespace brlab {

// ---- direct path -----------------------------------------------------------

// Apply a bilinear symbol S(|xi|^2, |eta|^2) (raw squared continuous
// frequencies) to a coefficient pair and return the spatial field
//   sum_{k1,k2} S(...) fh_{k1} gh_{k2} e^{2 pi i (k1+k2) x / L}.
// One inverse transform per active row of the first slot.
template <class Sym>
std::vector<cplx> bilinear_apply(const torus_grid<1>& g,
                                 const std::vector<cplx>& fh,
                                 const std::vector<cplx>& gh, Sym&& sym) {
    const int n = g.n;
    std::vector<cplx> field(n, cplx{0.0, 0.0});
    std::vector<cplx> root(n);
    for (int i = 0; i < n; ++i)
        root[i] = std::polar(1.0, 2.0 * pi * i / n);
    std::vector<cplx> row(n);
    for (int i1 = 0; i1 < n; ++i1) {
        if (fh[i1] == cplx{0.0, 0.0}) continue;
        const int k1 = freq_of(i1, n);
        const double xi = k1 / g.len;
        const double asq = xi * xi;
        bool any = false;
        for (int i2 = 0; i2 < n; ++i2) {
            if (gh[i2] == cplx{0.0, 0.0}) { row[i2] = cplx{0.0, 0.0}; continue; }
            const double eta = freq_of(i2, n) / g.len;
            const double v = sym(asq, eta * eta);
            row[i2] = gh[i2] * v;
            any = any || (v != 0.0);
        }
        if (!any) continue;
        const std::vector<cplx> spat = g.idft(row);
        const double sgn = (k1 & 1) ? -1.0 : 1.0;  // e^{-pi i k1} at x offset
        const cplx lead = fh[i1] * sgn;
        const int step = ((k1 % n) + n) % n;
        int idx = 0;
        for (int i = 0; i < n; ++i) {
            field[i] += lead * root[idx] * spat[i];
            idx += step;
            if (idx >= n) idx -= n;
        }
    }
    return field;
}

// Ball mean of joint order alpha at dilation R.
inline std::vector<cplx> bilinear_ball(const torus_grid<1>& g,
                                       const std::vector<cplx>& fh,
                                       const std::vector<cplx>& gh,
                                       double alpha, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [alpha, r2](double asq, double bsq) {
        return br_symbol(alpha, (asq + bsq) / r2);
    });
}

// Dilation-derivative generator at order alpha: R d/dR of the order
// (alpha+1) ball mean, evaluated directly from its closed-form symbol.
inline std::vector<cplx> bilinear_square_generator(const torus_grid<1>& g,
                                                   const std::vector<cplx>& fh,
                                                   const std::vector<cplx>& gh,
                                                   double alpha, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [alpha, r2](double asq, double bsq) {
        return square_symbol(alpha, (asq + bsq) / r2);
    });
}

// Pointwise maximal modulus of ball means over a dilation set.
inline std::vector<double> bilinear_maximal(const torus_grid<1>& g,
                                            const std::vector<cplx>& fh,
                                            const std::vector<cplx>& gh,
                                            double alpha,
                                            const std::vector<double>& Rs) {
    std::vector<double> out(g.size(), 0.0);
    for (double R : Rs) {
        const auto b = bilinear_ball(g, fh, gh, alpha, R);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::max(out[i], std::abs(b[i]));
    }
    return out;
}

// Pointwise weighted root-mean-square over a family of fields; with
// log-uniform weights this discretizes the square function's dR/R integral.
inline std::vector<double> weighted_rms(
    const std::vector<std::vector<cplx>>& fields,
    const std::vector<double>& weights) {
    std::vector<double> out(fields.empty() ? 0 : fields[0].size(), 0.0);
    for (std::size_t r = 0; r < fields.size(); ++r)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += weights[r] * std::norm(fields[r][i]);
    for (double& v : out) v = std::sqrt(v);
    return out;
}

// Square function over log-uniform dilations Rs (geometric spacing).
inline std::vector<double> square_function(const torus_grid<1>& g,
                                           const std::vector<cplx>& fh,
                                           const std::vector<cplx>& gh,
                                           double alpha,
                                           const std::vector<double>& Rs) {
    std::vector<std::vector<cplx>> fields;
    fields.reserve(Rs.size());
    for (double R : Rs)
        fields.push_back(bilinear_square_generator(g, fh, gh, alpha, R));
    const double dlnR = Rs.size() > 1 ? std::log(Rs[1] / Rs[0]) : 1.0;
    return weighted_rms(fields, std::vector<double>(Rs.size(), dlnR));
}

// Linearized pairing against coefficient fields b_r(x): the Cauchy-Schwarz
// companion of the square function over the same dilation set.
inline std::vector<cplx> linearized_pairing(
    const torus_grid<1>& g, const std::vector<cplx>& fh,
    const std::vector<cplx>& gh, double alpha, const std::vector<double>& Rs,
    const std::vector<std::vector<cplx>>& b) {
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    const double dlnR = Rs.size() > 1 ? std::log(Rs[1] / Rs[0]) : 1.0;
    for (std::size_t r = 0; r < Rs.size(); ++r) {
        const auto gen = bilinear_square_generator(g, fh, gh, alpha, Rs[r]);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += b[r][i] * gen[i] * dlnR;
    }
    return out;
}

// ---- factorized path: composite quadrature in the inner dilation ----------

struct quad_rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite midpoint rule with a 7th-order smoothstep map inside each
// breakpoint interval (tangency order 3 at both ends kills the endpoint
// power singularities), node share proportional to sqrt(length) with a
// budget-scaled floor so every interval refines under budget doubling.
inline quad_rule stein_rule(std::vector<double> breaks, int budget) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<double> starts, lens;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double ln = breaks[i + 1] - breaks[i];
        if (ln > 1e-15) { starts.push_back(breaks[i]); lens.push_back(ln); }
    }
    const int n_int = std::max<int>(1, static_cast<int>(lens.size()));
    const int min_per = std::max(4, budget / (16 * n_int));
    double share_sum = 0.0;
    for (double ln : lens) share_sum += std::sqrt(ln);
    quad_rule q;
    for (std::size_t v = 0; v < lens.size(); ++v) {
        const double ln = lens[v], st = starts[v];
        const int m = std::max<int>(
            min_per, static_cast<int>(budget * std::sqrt(ln) / share_sum));
        for (int i = 0; i < m; ++i) {
            const double s = (i + 0.5) / m;
            const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
            const double u = s4 * (35.0 - 84.0 * s + 70.0 * s2 - 20.0 * s3);
            const double om = 1.0 - s;
            const double du = 140.0 * s3 * om * om * om;
            q.nodes.push_back(st + ln * u);
            q.weights.push_back(ln * du / m);
        }
    }
    return q;
}

// Breakpoints for a shell piece in the first slot: integration endpoints,
// the shell-edge radii sqrt(1-a) of active first-slot frequencies, and the
// ball-edge radii sqrt(b) of all second-slot lattice frequencies.
inline std::vector<double> shell_breakpoints(const torus_grid<1>& g, int j,
                                             double R) {
    const double Tj = std::sqrt(std::ldexp(1.0, -j + 1));
    std::vector<double> br{0.0, Tj};
    const double lo = 1.0 - std::ldexp(1.0, -j + 1);
    const double hi = 1.0 - std::ldexp(1.0, -j - 1);
    for (int k = 0; k <= g.n / 2; ++k) {
        const double a = sqr(k / (g.len * R));
        if (a >= lo && a <= hi && a < 1.0) {
            const double e = std::sqrt(1.0 - a);
            if (e > 0.0 && e < Tj) br.push_back(e);
        }
        if (a > 0.0 && a < Tj * Tj) br.push_back(std::sqrt(a));
    }
    return br;
}

// Same for the ring piece (fixed upper endpoint, ring-band edges).
inline std::vector<double> ring_breakpoints(const torus_grid<1>& g, double R) {
    const double up = std::sqrt(29.0 / 32.0);
    std::vector<double> br{0.0, up};
    for (int k = 0; k <= g.n / 2; ++k) {
        const double b = sqr(k / (g.len * R));
        if (psi_center_outer(b) > 0.0 && b < 1.0) {
            const double e = std::sqrt(1.0 - b);
            if (e > 0.0 && e < up) br.push_back(e);
        }
        if (b > 0.0 && b < up * up) br.push_back(std::sqrt(b));
    }
    return br;
}

// Factorized shell piece, band in the first slot:
//   2 c(z,beta) \int_0^{T_j} [S_{j,t} f](x) [B^{z-beta}_{R t} g](x)
//                 t^{2(z-beta)+1} dt
inline std::vector<cplx> factorized_shell_field(const torus_grid<1>& g,
                                                const std::vector<cplx>& fh,
                                                const std::vector<cplx>& gh,
                                                int j, double z, double beta,
                                                double R, int budget) {
    const double dlt = z - beta;
    const double cc = stein_constant(z, beta);
    const auto q = stein_rule(shell_breakpoints(g, j, R), budget);
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double t = q.nodes[m];
        if (t <= 0.0) continue;
        const auto Sf = g.idft(shell_edge_multiplier(g, fh, j, beta, R, t));
        const auto Bg = g.idft(ball_power_multiplier(g, gh, dlt, R * t));
        const double w = cc * q.weights[m] * std::pow(t, 2.0 * dlt + 1.0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * Sf[i] * Bg[i];
    }
    return out;
}

// Direct evaluation of the same shell piece through the joint symbol.
inline std::vector<cplx> direct_shell_field(const torus_grid<1>& g,
                                            const std::vector<cplx>& fh,
                                            const std::vector<cplx>& gh, int j,
                                            double z, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [j, z, r2](double asq, double bsq) {
        return xi_band_symbol(j, z, asq / r2, bsq / r2);
    });
}

// Factorized shell piece with the band in the second slot; the first slot
// carries the smooth-center projection composed with the fractional ball.
inline std::vector<cplx> factorized_eta_shell_field(
    const torus_grid<1>& g, const std::vector<cplx>& fh,
    const std::vector<cplx>& gh, int j, double z, double beta, double R,
    int budget) {
    const double dlt = z - beta;
    const double cc = stein_constant(z, beta);
    const auto fh0 = smooth_center_multiplier(g, fh, R);
    const auto q = stein_rule(shell_breakpoints(g, j, R), budget);
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double t = q.nodes[m];
        if (t <= 0.0) continue;
        const auto Sg = g.idft(shell_edge_multiplier(g, gh, j, beta, R, t));
        const auto Bf = g.idft(ball_power_multiplier(g, fh0, dlt, R * t));
        const double w = cc * q.weights[m] * std::pow(t, 2.0 * dlt + 1.0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * Bf[i] * Sg[i];
    }
    return out;
}

inline std::vector<cplx> direct_eta_shell_field(const torus_grid<1>& g,
                                                const std::vector<cplx>& fh,
                                                const std::vector<cplx>& gh,
                                                int j, double z, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [j, z, r2](double asq, double bsq) {
        return eta_band_symbol(j, z, asq / r2, bsq / r2);
    });
}

// Factorized ring piece (outer part of the smooth center in slot two),
// integrated to the fixed radius sqrt(29/32) that covers every ring edge.
inline std::vector<cplx> factorized_ring_field(const torus_grid<1>& g,
                                               const std::vector<cplx>& fh,
                                               const std::vector<cplx>& gh,
                                               double z, double beta, double R,
                                               int budget) {
    const double dlt = z - beta;
    const double cc = stein_constant(z, beta);
    const auto fh0 = smooth_center_multiplier(g, fh, R);
    const auto q = stein_rule(ring_breakpoints(g, R), budget);
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double t = q.nodes[m];
        if (t <= 0.0) continue;
        const auto Hg = g.idft(ring_edge_multiplier(g, gh, beta, R, t));
        const auto Bf = g.idft(ball_power_multiplier(g, fh0, dlt, R * t));
        const double w = cc * q.weights[m] * std::pow(t, 2.0 * dlt + 1.0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * Bf[i] * Hg[i];
    }
    return out;
}

inline std::vector<cplx> direct_ring_field(const torus_grid<1>& g,
                                           const std::vector<cplx>& fh,
                                           const std::vector<cplx>& gh,
                                           double z, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [z, r2](double asq, double bsq) {
        return eta_ring_symbol(z, asq / r2, bsq / r2);
    });
}

// Core piece of the second slot (left unfactorized: its symbol is smooth
// and compactly supported inside the ball, no subordination needed).
inline std::vector<cplx> direct_core_field(const torus_grid<1>& g,
                                           const std::vector<cplx>& fh,
                                           const std::vector<cplx>& gh,
                                           double z, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [z, r2](double asq, double bsq) {
        return eta_core_symbol(z, asq / r2, bsq / r2);
    });
}

// ---- factorized path for the dilation-derivative generator ----------------

// Shell piece of the generator 2(z+1)(a+b)(1-a-b)^z psi_j(a).  The (a+b)
// weight splits across the factorization: the b part rides the inner ball
// operator as u(1-u)^{z-beta} at scale Rt and picks up an extra t^2; the a
// part stays with the shell factor.
inline std::vector<cplx> factorized_square_shell_field(
    const torus_grid<1>& g, const std::vector<cplx>& fh,
    const std::vector<cplx>& gh, int j, double z, double beta, double R,
    int budget) {
    const double dlt = z - beta;
    const double cc = 2.0 * (z + 1.0) * stein_constant(z, beta);
    const auto q = stein_rule(shell_breakpoints(g, j, R), budget);
    const double r2 = R * R;
    std::vector<cplx> out(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double t = q.nodes[m];
        if (t <= 0.0) continue;
        const double rt = R * t, rt2 = rt * rt;
        const auto Sf = g.idft(shell_edge_multiplier(g, fh, j, beta, R, t));
        const auto Saf = g.idft(apply_radial_multiplier(
            g, fh, [=](double ksq) {
                const double a = ksq / r2;
                const double cut = psi_band(std::ldexp(1.0 - a, j));
                if (cut == 0.0) return 0.0;
                return a * cut * positive_pow(1.0 - a - t * t, beta - 1.0);
            }));
        const auto Bg = g.idft(ball_power_multiplier(g, gh, dlt, rt));
        const auto Ag = g.idft(apply_radial_multiplier(
            g, gh, [=](double ksq) {
                const double u = ksq / rt2;
                return u * positive_pow(1.0 - u, dlt);
            }));
        const double w = cc * q.weights[m] * std::pow(t, 2.0 * dlt + 1.0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * (Sf[i] * Ag[i] * (t * t) + Saf[i] * Bg[i]);
    }
    return out;
}

inline std::vector<cplx> direct_square_shell_field(const torus_grid<1>& g,
                                                   const std::vector<cplx>& fh,
                                                   const std::vector<cplx>& gh,
                                                   int j, double z, double R) {
    const double r2 = R * R;
    return bilinear_apply(g, fh, gh, [j, z, r2](double asq, double bsq) {
        const double a = asq / r2, b = bsq / r2;
        const double cut = psi_band(std::ldexp(1.0 - a, j));
        if (cut == 0.0) return 0.0;
        return cut * 2.0 * (z + 1.0) * (a + b) * positive_pow(1.0 - a - b, z);
    });
}

// ---- analytic-parameter derivative of the factorized shell piece ----------

struct dz_shell_terms {
    std::vector<cplx> constant_term;   // derivative of the constant
    std::vector<cplx> ball_log_term;   // log factor inside the ball operator
    std::vector<cplx> scale_log_term;  // log factor from the dilation weight
};

inline dz_shell_terms dz_shell_fields(const torus_grid<1>& g,
                                      const std::vector<cplx>& fh,
                                      const std::vector<cplx>& gh, int j,
                                      double z, double beta, double R,
                                      int budget) {
    const double dlt = z - beta;
    const double cc = stein_constant(z, beta);
    const double dcc = stein_constant_dz(z, beta);
    const auto q = stein_rule(shell_breakpoints(g, j, R), budget);
    dz_shell_terms T;
    T.constant_term.assign(g.size(), cplx{0.0, 0.0});
    T.ball_log_term.assign(g.size(), cplx{0.0, 0.0});
    T.scale_log_term.assign(g.size(), cplx{0.0, 0.0});
    for (std::size_t m = 0; m < q.nodes.size(); ++m) {
        const double t = q.nodes[m];
        if (t <= 0.0) continue;
        const auto Sf = g.idft(shell_edge_multiplier(g, fh, j, beta, R, t));
        const auto Bg = g.idft(ball_power_multiplier(g, gh, dlt, R * t));
        const auto Btg =
            g.idft(ball_power_log_multiplier(g, gh, dlt, R * t));
        const double base = q.weights[m] * std::pow(t, 2.0 * dlt + 1.0);
        const double w1 = dcc * base;
        const double w2 = cc * base;
        const double w3 = cc * base * 2.0 * std::log(t);
        for (std::size_t i = 0; i < T.constant_term.size(); ++i) {
            const cplx sb = Sf[i] * Bg[i];
            T.constant_term[i] += w1 * sb;
            T.ball_log_term[i] += w2 * Sf[i] * Btg[i];
            T.scale_log_term[i] += w3 * sb;
        }
    }
    return T;
}

}  // namespace brlab
