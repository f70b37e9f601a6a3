#pragma once
// Scalar special functions and quadrature building blocks:
//   * Bessel J_nu (real order, x >= 0): long-double ascending series for
//     moderate x, adaptive Hankel asymptotics for large x
//   * Gamma / log-Gamma (complex, Lanczos) and digamma (analytic derivative
//     of the same approximation -- no numeric differencing)
//   * Gauss-Legendre nodes, tanh-sinh integration with endpoint-distance
//     arithmetic (integrands receive their distance to each endpoint so
//     factors like (1-t^2) can be computed without cancellation)
//   * the compactly supported cutoff family used by every frequency
//     decomposition in this project (smooth step, dyadic annulus bump psi,
//     center bump psi0 and its two-piece split)

#include <cmath>
#include <functional>
#include <vector>

#include "brlab/util.hpp"

namespace brlab {

// ===========================================================================
// Bessel J_nu
// ===========================================================================
namespace detail {

inline double bessel_j_series(double nu, double x) {
    // ascending series in long double; fine for x up to ~18 at double target
    const long double xl = x, half = xl / 2.0L;
    long double term = std::pow(half, (long double)nu) / std::tgamma((long double)nu + 1.0L);
    long double sum = term;
    const long double q = half * half;
    for (int m = 1; m < 400; ++m) {
        term *= -q / ((long double)m * ((long double)nu + m));
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum) + 1e-290L) break;
    }
    return static_cast<double>(sum);
}

inline double bessel_j_hankel(double nu, double x) {
    // large-argument expansion J_nu ~ sqrt(2/(pi x)) [P cos w - Q sin w],
    // w = x - nu pi/2 - pi/4; the divergent series is truncated at its
    // smallest term.
    const double mu = 4.0 * nu * nu;
    const double w = x - nu * pi / 2.0 - pi / 4.0;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double best = std::abs(term);
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > best) break;  // asymptotic tail started growing
        best = std::abs(term);
        const int r = k % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (std::abs(term) < 1e-17) break;
    }
    return std::sqrt(2.0 / (pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace detail

// J_nu(x) for real nu >= 0, x >= 0.
inline double bessel_j(double nu, double x) {
    if (x < 0) throw std::invalid_argument("bessel_j: x must be >= 0");
    if (x == 0.0) return (nu == 0.0) ? 1.0 : 0.0;
    const double cross = std::max(17.0, 1.3 * nu);
    return (x <= cross) ? detail::bessel_j_series(nu, x)
                        : detail::bessel_j_hankel(nu, x);
}

// J_nu(2 pi r) / (2 pi r)^nu extended continuously through r = 0; the natural
// normalization for radial Fourier profiles.
inline double bessel_j_over_pow(double nu, double z) {
    if (z > 0.25) return bessel_j(nu, z) / std::pow(z, nu);
    // series of J_nu(z)/z^nu: sum_m (-1)^m (z/2)^{2m} / (2^nu m! Gamma(nu+m+1))
    const long double q = (long double)z * z / 4.0L;
    long double term = 1.0L / (std::pow(2.0L, (long double)nu)
                               * std::tgamma((long double)nu + 1.0L));
    long double sum = term;
    for (int m = 1; m < 60; ++m) {
        term *= -q / ((long double)m * ((long double)nu + m));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

// ===========================================================================
// Gamma / digamma (Lanczos g = 7, 9 coefficients)
// ===========================================================================
namespace detail {
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7,
};
}  // namespace detail

inline cplx gamma_fn(cplx z) {
    using namespace detail;
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    }
    z -= 1.0;
    cplx a = lanczos_c[0];
    for (int k = 1; k < 9; ++k) a += lanczos_c[k] / (z + double(k));
    const cplx t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

inline double gamma_fn(double x) { return gamma_fn(cplx{x, 0.0}).real(); }

// digamma via the analytic derivative of the Lanczos form (plus reflection)
inline double digamma(double x) {
    using namespace detail;
    if (x < 0.5) return digamma(1.0 - x) - pi / std::tan(pi * x);
    const double z = x - 1.0;
    double a = lanczos_c[0], da = 0.0;
    for (int k = 1; k < 9; ++k) {
        const double d = z + k;
        a += lanczos_c[k] / d;
        da -= lanczos_c[k] / (d * d);
    }
    const double t = z + lanczos_g + 0.5;
    return std::log(t) + (z + 0.5) / t - 1.0 + da / a;
}

// ===========================================================================
// Gauss-Legendre nodes/weights on [-1, 1]
// ===========================================================================
struct gl_rule {
    std::vector<double> x, w;
};

inline gl_rule gauss_legendre(int n) {
    gl_rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

// ===========================================================================
// tanh-sinh quadrature with endpoint-distance arithmetic
// ===========================================================================
// Integrates f over (a, b).  The integrand receives (x, d_a, d_b) where
// d_a = x - a and d_b = b - x are computed from the exponential form of the
// substitution, so endpoint-singular factors can be evaluated without the
// catastrophic cancellation of forming x - a directly.
inline double tanh_sinh(const std::function<double(double, double, double)>& f,
                        double a, double b, double tol = 1e-12,
                        int max_level = 12) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const double umax = 4.0;  // weights underflow well before this
    auto eval_pair = [&](double u) -> double {
        // x = mid + half * tanh(pi/2 sinh u), evaluated at +-u
        const double y = pi * 0.5 * std::sinh(u);
        const double e = std::exp(-2.0 * std::abs(y));
        const double den = 1.0 + e;
        // 1 - |tanh(y)| = 2 e / den  (cancellation-free)
        const double dnear = half * 2.0 * e / den;      // distance to near end
        const double dfar = (b - a) - dnear;            // distance to far end
        const double wgt = half * pi * 0.5 * std::cosh(u) *
                           (4.0 * e / (den * den));     // half * (pi/2) cosh sech^2
        if (!(wgt > 1e-300)) return 0.0;
        // +u lands near b, -u lands near a
        return wgt * (f(b - dnear, dfar, dnear) + f(a + dnear, dnear, dfar));
    };
    double h = 1.0;
    double sum = half * pi * 0.5 * f(mid, half, half);  // u = 0 node
    for (double u = h; u <= umax; u += h) sum += eval_pair(u);
    double result = h * sum;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0;
        for (double u = h; u <= umax; u += 2.0 * h) add += eval_pair(u);
        sum += add;
        const double cur = h * sum;
        if (level >= 4 && std::abs(cur - result) <= tol * std::abs(cur) + 1e-300)
            return cur;
        result = cur;
    }
    return result;
}

// ===========================================================================
// compactly supported cutoffs
// ===========================================================================
inline double bump_chi(double u) { return (u > 0.0) ? std::exp(-1.0 / u) : 0.0; }

// smooth step: 0 for u <= 0, 1 for u >= 1, C-infinity monotone in between
inline double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double c0 = bump_chi(u), c1 = bump_chi(1.0 - u);
    return c0 / (c0 + c1);
}

// H: 0 for u <= 1/2, 1 for u >= 1
inline double step_half_one(double u) { return smooth_step(2.0 * u - 1.0); }

// dyadic annulus bump: psi in C_0^inf[1/2, 2], psi == 1 at 1,
// sum_j psi(2^j u) telescopes to a partition of unity
inline double psi_band(double u) {
    return step_half_one(u) - step_half_one(0.5 * u);
}

// center bump: 1 for t <= 1/2, 0 for t >= 3/4 (argument is typically
// t = |xi|^2/R^2)
inline double psi_center(double t) { return step_half_one(2.0 * (1.0 - t)); }

// two-piece split of psi_center used by the lowest dyadic band of the
// second-slot decomposition: outer piece lives on t >= 1/8
inline double psi_center_outer(double t) {
    return psi_center(t) * smooth_step((t - 0.125) / 0.0625);
}
inline double psi_center_inner(double t) {
    return psi_center(t) - psi_center_outer(t);
}

// | psi_center(t) + sum_{j=2}^{J} psi(2^j (1-t)) - 1 |  (zero whenever
// 1 - t >= 2^{-J})
inline double partition_defect(double t, int max_band) {
    double s = psi_center(t);
    for (int j = 2; j <= max_band; ++j) s += psi_band(std::ldexp(1.0 - t, j));
    return std::abs(s - 1.0);
}

}  // namespace brlab
