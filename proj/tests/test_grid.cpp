#include <catch2/catch_amalgamated.hpp>

#include "brlab/grid.hpp"

using namespace brlab;

namespace {

template <int Dim>
std::vector<cplx> random_field(const torus_grid<Dim>& g, std::uint64_t seed) {
    det_rng rng(seed);
    std::vector<cplx> f(g.size());
    for (auto& v : f) v = cplx{rng.normal(), rng.normal()};
    return f;
}

}  // namespace

TEST_CASE("round trip idft(dft(f)) recovers samples", "[grid]") {
    for (int n : {16, 64, 256}) {
        torus_grid<1> g1(n, 2.5);
        auto f = random_field(g1, 11 + n);
        auto back = g1.idft(g1.dft(f));
        REQUIRE(rel_l2(back, f) < 1e-12);
    }
    for (int n : {16, 64}) {
        torus_grid<2> g2(n, 1.0);
        auto f = random_field(g2, 101 + n);
        auto back = g2.idft(g2.dft(f));
        REQUIRE(rel_l2(back, f) < 1e-12);
    }
}

TEST_CASE("plancherel identity holds", "[grid]") {
    for (int n : {16, 64, 256}) {
        torus_grid<1> g(n, 3.0);
        auto f = random_field(g, 7 + n);
        auto fh = g.dft(f);
        REQUIRE(rel_err(g.coeff_l2_norm(fh), g.l2_norm(f)) < 1e-12);
    }
    torus_grid<2> g2(32, 2.0);
    auto f = random_field(g2, 5);
    REQUIRE(rel_err(g2.coeff_l2_norm(g2.dft(f)), g2.l2_norm(f)) < 1e-12);
}

TEST_CASE("fast transform matches direct summation oracle", "[grid]") {
    for (int n : {16, 64}) {
        torus_grid<1> g(n, 2.0);
        auto f = random_field(g, 31 + n);
        REQUIRE(rel_l2(g.dft(f), g.reference_dft(f)) < 1e-12);
    }
    torus_grid<2> g2(16, 1.5);
    auto f2 = random_field(g2, 97);
    REQUIRE(rel_l2(g2.dft(f2), g2.reference_dft(f2)) < 1e-12);
    torus_grid<2> g2b(64, 1.0);
    auto f2b = random_field(g2b, 98);
    REQUIRE(rel_l2(g2b.dft(f2b), g2b.reference_dft(f2b)) < 1e-12);
}

TEST_CASE("single mode lands on the expected frequency bin", "[grid]") {
    torus_grid<1> g(64, 2.0);
    const int k0 = 5;
    std::vector<cplx> f(g.size());
    for (int i = 0; i < g.n; ++i)
        f[i] = std::polar(1.0, 2.0 * pi * k0 * g.coord(i) / g.len);
    auto fh = g.dft(f);
    for (int i = 0; i < g.n; ++i) {
        const double want = (freq_of(i, g.n) == k0) ? 1.0 : 0.0;
        REQUIRE(std::abs(fh[i] - want) < 1e-12);
    }
}

TEST_CASE("translation acts as a phase on coefficients", "[grid]") {
    torus_grid<1> g(128, 1.0);
    auto f = random_field(g, 12);
    auto fh = g.dft(f);
    // shift by exactly one cell: f_shift(x) = f(x - L/N)
    std::vector<cplx> shifted(g.size());
    for (int i = 0; i < g.n; ++i) shifted[i] = f[(i - 1 + g.n) % g.n];
    auto sh = g.dft(shifted);
    for (int i = 0; i < g.n; ++i) {
        const cplx expect =
            fh[i] * std::polar(1.0, -2.0 * pi * freq_of(i, g.n) / double(g.n));
        REQUIRE(std::abs(sh[i] - expect) < 1e-11);
    }
}
