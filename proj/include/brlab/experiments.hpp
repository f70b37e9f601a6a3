#pragma once
// CSV-producing experiment drivers behind the CLI subcommands.  Every
// driver is deterministic: fixed seeds, fixed-order reductions, and
// fixed-format output, so re-runs are byte-identical.

#include <cmath>
#include <string>
#include <vector>

#include "brlab/config.hpp"
#include "brlab/dirac_average.hpp"
#include "brlab/endpoint.hpp"
#include "brlab/grid.hpp"
#include "brlab/kernels.hpp"
#include "brlab/operators_bilinear.hpp"
#include "brlab/symbols.hpp"
#include "brlab/util.hpp"
#include "brlab/weights.hpp"

namespace brlab {

// Random real band-limited pair with Hermitian coefficients.
inline std::pair<std::vector<cplx>, std::vector<cplx>> random_pair(
    const torus_grid<1>& g, int kf, int kg, std::uint64_t seed) {
    det_rng rng(seed);
    auto draw = [&](int kmax) {
        std::vector<cplx> h(g.n, cplx{0.0, 0.0});
        h[0] = cplx{rng.normal(), 0.0};
        for (int k = 1; k <= kmax; ++k) {
            const cplx c{rng.normal(), rng.normal()};
            h[bin_of(k, g.n)] = c;
            h[bin_of(-k, g.n)] = std::conj(c);
        }
        return h;
    };
    auto fh = draw(kf);
    auto gh = draw(kg);
    return {fh, gh};
}

// maximal: pointwise sup over dilations of the critical-order ball means.
inline void run_maximal(const json& cfg, const std::string& out) {
    const int n = jget(cfg, "grid_n", 256);
    const torus_grid<1> g{n, jget(cfg, "length", 1.0)};
    const auto [fh, gh] = random_pair(g, jget(cfg, "f_band", 40),
                                      jget(cfg, "g_band", 40),
                                      jget(cfg, "seed", 1));
    const auto rs = geomspace(jget(cfg, "r_lo", 2.0), jget(cfg, "r_hi", 60.0),
                              jget(cfg, "dilations", 32));
    const double alpha = jget(cfg, "alpha", 0.5);
    const auto mx = bilinear_maximal(g, fh, gh, alpha, rs);
    const auto f = g.idft(fh);
    const auto gg = g.idft(gh);
    csv_writer w(out);
    w.header({"x", "f", "g", "maximal"});
    for (int i = 0; i < n; ++i)
        w.row({g.coord(i), f[i].real(), gg[i].real(), mx[i]});
}

// square: log-uniform dilation square function of the generator fields.
inline void run_square(const json& cfg, const std::string& out) {
    const int n = jget(cfg, "grid_n", 256);
    const torus_grid<1> g{n, jget(cfg, "length", 1.0)};
    const auto [fh, gh] = random_pair(g, jget(cfg, "f_band", 40),
                                      jget(cfg, "g_band", 40),
                                      jget(cfg, "seed", 1));
    const auto rs = geomspace(jget(cfg, "r_lo", 3.07), jget(cfg, "r_hi", 59.9),
                              jget(cfg, "dilations", 64));
    const double alpha = jget(cfg, "alpha", 0.5);
    const auto sq = square_function(g, fh, gh, alpha, rs);
    csv_writer w(out);
    w.header({"x", "square"});
    for (int i = 0; i < n; ++i) w.row({g.coord(i), sq[i]});
}

// kernel: radial profile table, or the periodized kernel via both routes.
inline void run_kernel(const json& cfg, const std::string& out) {
    const double alpha = jget(cfg, "alpha", 0.5);
    const std::string mode = jget<std::string>(cfg, "mode", "profile");
    csv_writer w(out);
    if (mode == "periodic") {
        const double R = jget(cfg, "radius", 3.25);
        const double L = jget(cfg, "length", 4.0);
        const int m = jget(cfg, "images", 40);
        const int samples = jget(cfg, "samples", 129);
        w.header({"x", "freq_route", "image_route", "tail_bound"});
        for (int i = 0; i < samples; ++i) {
            const double x = (L / 2.0) * i / (samples - 1);
            w.row({x, periodic_kernel_freq(alpha, R, L, x, 0.0),
                   periodic_kernel_images(alpha, R, L, x, 0.0, m),
                   periodic_image_tail_bound(alpha, R, L, m)});
        }
        return;
    }
    const int d = jget(cfg, "joint_dim", 2);
    const double rmax = jget(cfg, "r_max", 12.0);
    const int samples = jget(cfg, "samples", 481);
    w.header({"r", "profile", "profile_up", "square_kernel", "asymptotic"});
    for (int i = 0; i < samples; ++i) {
        const double r = rmax * i / (samples - 1);
        const double base = (r == 0.0) ? radial_profile_origin(alpha, d)
                                       : radial_profile(alpha, d, r);
        const double up = (r == 0.0) ? radial_profile_origin(alpha + 1.0, d)
                                     : radial_profile(alpha + 1.0, d, r);
        const double sq = (r == 0.0)
                              ? 2.0 * (alpha + 1.0) *
                                    (radial_profile_origin(alpha, d) -
                                     radial_profile_origin(alpha + 1.0, d))
                              : square_profile(alpha, d, r);
        const double asy = (r == 0.0) ? 0.0 : asymptotic_profile(alpha, d, r);
        w.row({r, base, up, sq, asy});
    }
}

// decompose-check: split-reconstruction defects over the covered region.
inline void run_decompose(const json& cfg, const std::string& out) {
    const double z = jget(cfg, "order", 0.5);
    const int max_band = jget(cfg, "max_band", 14);
    const int m = jget(cfg, "samples_per_axis", 40);
    const double margin = std::ldexp(1.0, -max_band);
    csv_writer w(out);
    w.header({"a", "b", "first_slot_defect", "second_slot_defect"});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double a = (1.0 - margin) * i / (m - 1);
            const double b = (1.0 - margin) * j / (m - 1);
            if (a + b > 1.0 - margin) continue;
            w.row({a, b, xi_split_defect(z, a, b, max_band),
                   eta_split_defect(z, a, b, max_band)});
        }
}

// dirac-average: time averages of the diagonal trace at chosen frequencies.
inline void run_dirac(const json& cfg, const std::string& out) {
    const double x0 = jget(cfg, "base_point", std::sqrt(0.5) - 0.5);
    const int T = jget(cfg, "horizon", 2000);
    const auto G = build_class_weights(x0, T);
    avg_engine eng(&G, T, jget(cfg, "rho_direct", 40.0));
    const auto spec = point_spectrum(x0, jget(cfg, "spectrum_range", 2));
    std::vector<double> off =
        jget(cfg, "off_spectrum", std::vector<double>{0.5, 0.56, 0.62});
    csv_writer w(out);
    w.header({"lambda", "multiplicity", "avg_re", "avg_im", "avg_abs"});
    for (std::size_t i = 0; i < std::min<std::size_t>(spec.size(), 6); ++i) {
        const auto v = eng.avg(spec[i].lambda);
        w.row({spec[i].lambda, double(spec[i].mult), v.real(), v.imag(),
               std::abs(v)});
    }
    for (double lam : off) {
        const auto v = eng.avg(lam);
        w.row({lam, 0.0, v.real(), v.imag(), std::abs(v)});
    }
}

// riesz: partial products over the leading spectrum lines.
inline void run_riesz(const json& cfg, const std::string& out) {
    const double x0 = jget(cfg, "base_point", std::sqrt(0.5) - 0.5);
    const int T = jget(cfg, "horizon", 4000);
    const int levels = jget(cfg, "levels", 3);
    const auto G = build_class_weights(x0, T);
    avg_engine eng(&G, T, jget(cfg, "rho_direct", 40.0));
    const auto spec = point_spectrum(x0, 3);
    std::vector<double> lams;
    for (const auto& s : spec)
        if (s.lambda > 1e-9 && int(lams.size()) < levels)
            lams.push_back(s.lambda);
    const auto prods = riesz_product_levels(eng, lams, levels);
    csv_writer w(out);
    w.header({"level", "lambda", "product_re", "product_im", "increment_abs",
              "increment_scaled"});
    for (int k = 0; k <= levels; ++k) {
        const double lam = (k > 0) ? lams[k - 1] : 0.0;
        const double inc =
            (k > 0) ? std::abs(prods[k] - prods[k - 1]) : std::abs(prods[0]);
        const double scaled = (k > 0) ? inc * lam * lam : 0.0;
        w.row({double(k), lam, prods[k].real(), prods[k].imag(), inc, scaled});
    }
}

// blowup: bandwidth-growth columns plus the window-normalized quasinorm.
inline void run_blowup(const json& cfg, const std::string& out) {
    blowup_config bc;
    bc.kmax = jget(cfg, "k_max", bc.kmax);
    bc.grid_n = jget(cfg, "grid_n", bc.grid_n);
    bc.alpha = jget(cfg, "alpha", bc.alpha);
    bc.dt = jget(cfg, "dt", 0.1);
    bc.sizes = jget(cfg, "sizes", bc.sizes);
    const auto res = blowup_curve(bc);
    const double l1 = window_l1_norm();
    csv_writer w(out);
    w.header({"size", "annulus_min", "annulus_stat", "quasinorm",
              "quasinorm_unit"});
    for (const auto& r : res.rows)
        w.row({r.size, r.annulus_min, r.annulus_stat, r.quasinorm,
               r.quasinorm / (l1 * l1)});
}

// construct: certified constants and stage levels of the depth-2 search.
inline void run_construct(const json& cfg, const std::string& out) {
    construction_config cc;
    cc.grid_n = jget(cfg, "grid_n", cc.grid_n);
    cc.scan_limit = jget(cfg, "scan_limit", 16.0);
    cc.scan_step = jget(cfg, "scan_step", cc.scan_step);
    cc.scan_step_two = jget(cfg, "scan_step_two", cc.scan_step_two);
    cc.run_stage_two = jget(cfg, "run_stage_two", true);
    const auto rep = run_construction(cc);
    {
        csv_writer w(out);
        w.header({"c_near", "c_far", "c_const", "lip", "delta2", "envelope",
                  "a2", "eps2", "achieved_level", "achieved_x",
                  "refined_level", "peak_r", "level_mask_cells",
                  "threshold_mask_cells", "found_r2", "f_l1", "mf_min",
                  "mf_max", "bound_n", "f_measure", "delta2p", "b2", "eps2p"});
        w.row({rep.c_near, rep.c_far, rep.c_const, rep.lip, rep.delta2,
               rep.envelope, rep.a2, rep.eps2, rep.achieved_level,
               rep.achieved_x, rep.refined_level, rep.peak_r,
               double(rep.level_mask_cells), double(rep.threshold_mask_cells),
               double(rep.found_r2), rep.f_l1, rep.mf_min, rep.mf_max,
               double(rep.bound_n), rep.f_measure, rep.delta2p, rep.b2,
               rep.eps2p});
    }
    std::string side = out;
    const auto dot = side.rfind(".csv");
    side = (dot == std::string::npos ? side : side.substr(0, dot)) +
           "_candidates.csv";
    csv_writer w(side);
    w.header({"cutoff", "eps", "defect", "level", "reference", "threshold",
              "f_level", "f_reference"});
    for (std::size_t i = 0; i < rep.eps_by_candidate.size(); ++i) {
        auto at = [&](const std::vector<double>& v) {
            return i < v.size() ? v[i] : 0.0;
        };
        w.row({double(cc.doubling[i]), rep.eps_by_candidate[i],
               rep.defect_by_candidate[i], at(rep.level_by_candidate),
               at(rep.reference_by_candidate), at(rep.threshold_by_candidate),
               at(rep.f_level_by_candidate),
               at(rep.reference1_by_candidate)});
    }
}

// weights-probe: ratio families for an in-class and an out-of-class pair.
// family_id: 0 = centered (width-halving at the weight center), 1 = edge
// (offset bump, plain normalization).
inline void run_weights(const json& cfg, const std::string& out) {
    const int n = jget(cfg, "grid_n", 1024);
    const int dil = jget(cfg, "dilations", 32);
    const int levels = jget(cfg, "levels", 4);
    const double in1 = jget(cfg, "in_a1", 0.3), in2 = jget(cfg, "in_a2", 0.4);
    const double out1 = jget(cfg, "out_a1", 1.5),
                 out2 = jget(cfg, "out_a2", 0.3);
    csv_writer w(out);
    w.header({"family_id", "a1", "a2", "level", "width", "ratio",
              "octave_slope", "ap_char"});
    auto emit = [&](int fam, double a1, double a2) {
        const auto s = make_probe_setup(n, a1, a2, dil);
        const double ap = ap_characteristic(s.g, s.w1, s.w2, s.p1, s.p2);
        const auto r = (fam == 0) ? centered_family(s, levels)
                                  : edge_family(s, levels);
        for (int k = 0; k < levels; ++k)
            w.row({double(fam), a1, a2, double(k), 0.03 * std::pow(2.0, -k),
                   r.ratios[k], k ? r.octave_slopes[k - 1] : 0.0, ap});
    };
    emit(0, in1, in2);
    emit(1, out1, out2);
}

}  // namespace brlab
