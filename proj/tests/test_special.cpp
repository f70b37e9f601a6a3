#include <catch2/catch_amalgamated.hpp>

#include "brlab/special_functions.hpp"
#include "brlab/symbols.hpp"

using namespace brlab;

TEST_CASE("half-integer Bessel closed forms", "[special]") {
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x ; J_{3/2}(x) = sqrt(2/(pi x)) (sin x / x - cos x)
    for (double x : {0.1, 0.5, 1.0, 3.0, 8.0, 15.0, 24.0, 60.0, 150.0, 900.0}) {
        const double j12 = std::sqrt(2.0 / (pi * x)) * std::sin(x);
        REQUIRE(std::abs(bessel_j(0.5, x) - j12) <
                1e-8 * std::max(1.0, std::abs(j12)));
        const double j32 =
            std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
        REQUIRE(std::abs(bessel_j(1.5, x) - j32) <
                1e-8 * std::max(1.0, std::abs(j32)));
    }
}

TEST_CASE("Bessel three-term recurrence", "[special]") {
    // J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x)
    for (double nu : {1.0, 1.5, 2.5, 3.5, 7.0}) {
        for (double x : {0.3, 1.7, 6.0, 14.0, 33.0, 210.0}) {
            const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
            const double rhs = 2.0 * nu / x * bessel_j(nu, x);
            REQUIRE(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("series and asymptotic branches agree at the crossover", "[special]") {
    for (double nu : {0.5, 1.5, 2.5, 3.5}) {
        for (double x : {16.5, 17.0, 17.5, 18.0}) {
            const double a = detail::bessel_j_series(nu, x);
            const double b = detail::bessel_j_hankel(nu, x);
            REQUIRE(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("normalized Bessel profile is smooth through zero", "[special]") {
    // J_nu(z)/z^nu branch switch at z = 0.25: series and direct quotient
    // evaluated at the same point must agree
    for (double nu : {0.5, 1.5, 2.5}) {
        const double lo = bessel_j_over_pow(nu, 0.25);
        const double hi = bessel_j(nu, 0.25) / std::pow(0.25, nu);
        REQUIRE(std::abs(lo - hi) < 1e-12 * std::abs(lo));
        // z -> 0 limit: 1 / (2^nu Gamma(nu+1))
        const double limit = 1.0 / (std::pow(2.0, nu) * gamma_fn(nu + 1.0));
        REQUIRE(rel_err(bessel_j_over_pow(nu, 1e-8), limit) < 1e-10);
    }
}

TEST_CASE("Gamma functional equation", "[special]") {
    // Gamma(z+1) = z Gamma(z), real and complex arguments
    for (double x : {0.1, 0.37, 1.0, 2.5, 6.3, 11.0}) {
        REQUIRE(rel_err(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-10);
    }
    for (cplx z : {cplx{0.5, 1.0}, cplx{2.0, -3.0}, cplx{-1.3, 0.7}}) {
        const cplx lhs = gamma_fn(z + 1.0), rhs = z * gamma_fn(z);
        REQUIRE(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
    // spot values
    REQUIRE(rel_err(gamma_fn(0.5), std::sqrt(pi)) < 1e-12);
    REQUIRE(rel_err(gamma_fn(5.0), 24.0) < 1e-12);
}

TEST_CASE("digamma matches logarithmic derivative of Gamma", "[special]") {
    for (double x : {0.3, 0.9, 1.5, 2.7, 8.0}) {
        const double h = 1e-6;
        const double numeric =
            (std::log(gamma_fn(x + h)) - std::log(gamma_fn(x - h))) / (2.0 * h);
        REQUIRE(std::abs(digamma(x) - numeric) < 1e-7);
    }
    // psi(1) = -EulerGamma
    REQUIRE(std::abs(digamma(1.0) + 0.57721566490153286) < 1e-12);
}

TEST_CASE("tanh-sinh handles endpoint singularities", "[special]") {
    // int_0^1 t^{-1/2} dt = 2, computed through the endpoint-distance channel
    const double v = tanh_sinh(
        [](double, double da, double) { return 1.0 / std::sqrt(da); }, 0.0, 1.0);
    REQUIRE(rel_err(v, 2.0) < 1e-11);
    // int_0^1 (1-t^2)^{-0.4} t^{0.8} dt  ==  B(0.9, 0.6) / 2
    const double w = tanh_sinh(
        [](double t, double, double db) {
            return std::pow(db * (1.0 + t), -0.4) * std::pow(t, 0.8);
        },
        0.0, 1.0);
    const double beta_exact =
        gamma_fn(0.9) * gamma_fn(0.6) / gamma_fn(1.5) / 2.0;
    REQUIRE(rel_err(w, beta_exact) < 1e-10);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly", "[special]") {
    auto r = gauss_legendre(12);
    double s5 = 0, s22 = 0;
    for (int i = 0; i < 12; ++i) {
        s5 += r.w[i] * std::pow(r.x[i], 5);
        s22 += r.w[i] * std::pow(r.x[i], 22);
    }
    REQUIRE(std::abs(s5) < 1e-14);          // odd power
    REQUIRE(rel_err(s22, 2.0 / 23.0) < 1e-13);  // within exactness degree 23
}

TEST_CASE("cutoff family: shape and partition defect", "[special]") {
    REQUIRE(smooth_step(-0.5) == 0.0);
    REQUIRE(smooth_step(1.5) == 1.0);
    REQUIRE(std::abs(smooth_step(0.5) - 0.5) < 1e-15);
    REQUIRE(psi_band(1.0) == 1.0);
    REQUIRE(psi_band(0.49) == 0.0);
    REQUIRE(psi_band(2.01) == 0.0);
    // psi_center: 1 on [0,1/2], 0 beyond 3/4
    REQUIRE(psi_center(0.3) == 1.0);
    REQUIRE(psi_center(0.8) == 0.0);
    // two-piece split re-sums exactly
    for (double t = 0.0; t <= 1.0; t += 0.01) {
        REQUIRE(std::abs(psi_center_outer(t) + psi_center_inner(t) -
                         psi_center(t)) < 1e-15);
    }
    // truncated partition of unity: zero defect on the covered region
    const int J = 14;
    double worst = 0;
    for (double u = std::ldexp(1.0, -J); u <= 1.0; u *= 1.03) {
        worst = std::max(worst, partition_defect(1.0 - u, J));
    }
    REQUIRE(worst <= 1e-12);
}
