// Closed-form convolution kernels of the ball multipliers, their large
// argument asymptotics, and periodized versions evaluated through two
// independent routes (frequency lattice sum vs. image sum) with an
// analytic envelope bound for the image tail.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/special_functions.hpp"
#include "brlab/symbols.hpp"

namespace brlab {

// Kernel of (1 - |xi|^2)_+^alpha in dimension d at radius r >= 0:
//   Gamma(alpha+1) pi^{-alpha} J_{d/2+alpha}(2 pi r) / r^{d/2+alpha},
// written through the quotient form that is regular at r = 0.
inline double radial_profile(double alpha, int d, double r) {
    const double nu = 0.5 * d + alpha;
    return gamma_fn(alpha + 1.0) * std::pow(pi, -alpha) *
           std::pow(2.0 * pi, nu) * bessel_j_over_pow(nu, 2.0 * pi * r);
}

// Kernel value at the origin = volume integral of the profile.
inline double radial_profile_origin(double alpha, int d) {
    return gamma_fn(alpha + 1.0) * std::pow(pi, 0.5 * d) /
           gamma_fn(alpha + 1.0 + 0.5 * d);
}

// Kernel of the dilation-derivative generator 2(alpha+1) u (1-u)_+^alpha:
// difference of two profile orders, u(1-u)^a = (1-u)^a - (1-u)^{a+1}.
inline double square_profile(double alpha, int d, double r) {
    return 2.0 * (alpha + 1.0) *
           (radial_profile(alpha, d, r) - radial_profile(alpha + 1.0, d, r));
}

// Dilated kernel R^d * profile(R r).
inline double dilated_profile(double alpha, int d, double R, double r) {
    return std::pow(R, d) * radial_profile(alpha, d, R * r);
}

// Leading large-argument form at the critical order alpha = d/2 - 1 + 1/2
// ... in general: profile ~ amp * cos(2 pi r - (d/2+alpha) pi/2 - pi/4) r^{-(d+2alpha+1)/2}
inline double asymptotic_amplitude(double alpha, int d) {
    // from J_nu(z) ~ sqrt(2/(pi z)) cos(z - nu pi/2 - pi/4)
    return gamma_fn(alpha + 1.0) * std::pow(pi, -alpha) / pi;
}

inline double asymptotic_profile(double alpha, int d, double r) {
    const double nu = 0.5 * d + alpha;
    const double phase = 2.0 * pi * r - nu * 0.5 * pi - 0.25 * pi;
    return asymptotic_amplitude(alpha, d) * std::cos(phase) *
           std::pow(r, -0.5 * (d + 2.0 * alpha + 1.0));
}

// ---- periodized kernel: two independent evaluation routes ------------------

// Route 1 (always valid): direct lattice sum over the symbol's support,
//   D_R(x) = sum_k (1 - |k/L|^2/R^2)_+^alpha e^{2 pi i k.x / L},  d = 2.
inline double periodic_kernel_freq(double alpha, double R, double L,
                                   double x0, double x1) {
    const int kmax = static_cast<int>(std::floor(L * R));
    double acc = 0.0;
    for (int k0 = -kmax; k0 <= kmax; ++k0) {
        const double a0 = sqr(k0 / (L * R));
        if (a0 >= 1.0) continue;
        double row = 0.0;
        for (int k1 = -kmax; k1 <= kmax; ++k1) {
            const double u = a0 + sqr(k1 / (L * R));
            const double s = br_symbol(alpha, u);
            if (s == 0.0) continue;
            row += s * std::cos(2.0 * pi * k1 * x1 / L);
        }
        acc += row * std::cos(2.0 * pi * k0 * x0 / L);
    }
    return acc;
}

// Route 2 (valid for alpha > (d-1)/2): image sum of the closed form,
//   D_R(x) = L^d sum_m R^d profile(R |x + L m|),  truncated at |m|_inf <= M.
inline double periodic_kernel_images(double alpha, double R, double L,
                                     double x0, double x1, int M) {
    const int d = 2;
    double acc = 0.0;
    for (int m0 = -M; m0 <= M; ++m0)
        for (int m1 = -M; m1 <= M; ++m1) {
            const double y0 = x0 + L * m0, y1 = x1 + L * m1;
            const double r = std::hypot(y0, y1);
            acc += dilated_profile(alpha, d, R, r);
        }
    return std::pow(L, d) * acc;
}

// Envelope bound for the omitted images: with |x|_inf <= L/2 every image in
// the sup-norm shell |m|_inf = s >= M+1 sits at distance >= L(s - 1/2) and
// the shell holds 8s points.  Deep in the oscillatory regime (argument far
// beyond the Bessel transition, true for every omitted image here) the
// modulus envelope sqrt(2/(pi z)) gives |profile(rho)| <= amp rho^{-e} with
// e = (d+2alpha+1)/2; a factor 2 absorbs the O(1/z) envelope slack.
inline double periodic_image_tail_bound(double alpha, double R, double L,
                                        int M) {
    const int d = 2;
    const double amp = asymptotic_amplitude(alpha, d);
    const double expo = 0.5 * (d + 2.0 * alpha + 1.0);
    double acc = 0.0;
    for (int s = M + 1;; ++s) {
        const double rho = R * L * (s - 0.5);
        const double term = 8.0 * s * amp * std::pow(rho, -expo);
        acc += term;
        if (term < 1e-18 * (1.0 + acc) || s > 4000000) break;
    }
    return 2.0 * std::pow(L, d) * std::pow(R, d) * acc;
}

// ---- sampled periodic kernel on a 2-d grid via the transform stack --------

// Inverse transform of the sampled symbol: equals the full image sum
// exactly at the grid points (no truncation), by Poisson summation.
inline std::vector<cplx> sampled_periodic_kernel(const torus_grid<2>& g,
                                                 double alpha, double R) {
    std::vector<cplx> sh(g.size());
    for (std::size_t i = 0; i < sh.size(); ++i) {
        const auto idx = g.unravel(i);
        const double f0 = freq_of(idx[0], g.n) / g.len;
        const double f1 = freq_of(idx[1], g.n) / g.len;
        sh[i] = br_symbol(alpha, (f0 * f0 + f1 * f1) / (R * R));
    }
    return g.idft(sh);
}

}  // namespace brlab
