#pragma once
// Scalar multiplier profiles.
//
// Throughout, the bilinear multiplier argument is split as
//     a = |xi|^2 / R^2,   b = |eta|^2 / R^2,   s = a + b,
// so the ball multiplier of order alpha is (1 - s)_+^alpha.  The dyadic
// frequency decompositions cut this profile with the psi / psi_center family
// from special_functions.hpp, either along the first slot (xi bands) or --
// inside the first-slot center piece -- along the second slot (eta bands).

#include <cmath>

#include "brlab/special_functions.hpp"

namespace brlab {

// (1 - u)_+^alpha ; the radial ball-multiplier profile
inline double br_symbol(double alpha, double u) {
    if (u >= 1.0) return 0.0;
    return std::pow(1.0 - u, alpha);
}

// square-function generator profile: u (1-u)_+^alpha scaled so that it is
// exactly R d/dR of the order-(alpha+1) profile: 2(alpha+1) u (1-u)_+^alpha
inline double square_symbol(double alpha, double u) {
    if (u >= 1.0) return 0.0;
    return 2.0 * (alpha + 1.0) * u * std::pow(1.0 - u, alpha);
}

inline double positive_pow(double base, double expo) {
    return (base > 0.0) ? std::pow(base, expo) : 0.0;
}

// ---------------------------------------------------------------------------
// first-slot (xi) dyadic split: band j >= 2 lives on 1 - a ~ 2^{-j}
inline double xi_band_symbol(int j, double z, double a, double b) {
    const double cut = psi_band(std::ldexp(1.0 - a, j));
    if (cut == 0.0) return 0.0;
    return cut * positive_pow(1.0 - a - b, z);
}

// first-slot center piece (a bounded away from 1)
inline double xi_center_symbol(double z, double a, double b) {
    const double cut = psi_center(a);
    if (cut == 0.0) return 0.0;
    return cut * positive_pow(1.0 - a - b, z);
}

// ---------------------------------------------------------------------------
// second-slot (eta) split of the center piece: bands j >= 2 on 1 - b ~ 2^{-j},
// then the remaining center-center region split into an outer ring
// (b in [1/8, 3/4], "band 1") and an inner core ("band 0").
inline double eta_band_symbol(int j, double z, double a, double b) {
    const double cut = psi_center(a) * psi_band(std::ldexp(1.0 - b, j));
    if (cut == 0.0) return 0.0;
    return cut * positive_pow(1.0 - a - b, z);
}

inline double eta_ring_symbol(double z, double a, double b) {  // "j = 1"
    const double cut = psi_center(a) * psi_center_outer(b);
    if (cut == 0.0) return 0.0;
    return cut * positive_pow(1.0 - a - b, z);
}

inline double eta_core_symbol(double z, double a, double b) {  // "j = 0"
    const double cut = psi_center(a) * psi_center_inner(b);
    if (cut == 0.0) return 0.0;
    return cut * positive_pow(1.0 - a - b, z);
}

// ---------------------------------------------------------------------------
// reconstruction defects: the dyadic pieces must re-sum to the ball profile
// wherever the truncated partition is complete (1 - s >= 2^{-max_band}).

// first-slot split at a point (a, b)
inline double xi_split_defect(double z, double a, double b, int max_band) {
    double sum = xi_center_symbol(z, a, b);
    for (int j = 2; j <= max_band; ++j) sum += xi_band_symbol(j, z, a, b);
    return std::abs(sum - positive_pow(1.0 - a - b, z));
}

// second-slot split of the center piece at a point (a, b)
inline double eta_split_defect(double z, double a, double b, int max_band) {
    double sum = eta_ring_symbol(z, a, b) + eta_core_symbol(z, a, b);
    for (int j = 2; j <= max_band; ++j) sum += eta_band_symbol(j, z, a, b);
    return std::abs(sum - xi_center_symbol(z, a, b));
}

// ---------------------------------------------------------------------------
// the one-parameter subordination constant: the profile (1-a-b)_+^z factors
// through an integral over intermediate dilations with constant
//     2 Gamma(z+1) / (Gamma(beta) Gamma(z-beta+1)).
inline double stein_constant(double z, double beta) {
    return 2.0 * gamma_fn(z + 1.0) / (gamma_fn(beta) * gamma_fn(z - beta + 1.0));
}

// d/dz of stein_constant at fixed beta (analytic, via digamma)
inline double stein_constant_dz(double z, double beta) {
    return stein_constant(z, beta) * (digamma(z + 1.0) - digamma(z - beta + 1.0));
}

}  // namespace brlab
