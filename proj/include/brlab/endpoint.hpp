#pragma once
// Desk-scale endpoint experiments on the unit torus.
//
// Part 1: growth of the bilinear square function along a family of
// flat-spectrum windows with increasing bandwidth.  The diagonal trace of
// the generator kernel is accumulated over joint frequency classes
// (q, s) = (|k|^2 + |k'|^2, k + k'), and per-bandwidth summary statistics
// (annulus minimum, its square, weak-L^{1/2} quasinorm) are reported.
//
// Part 2: a depth-2 divergence search for the critical-order means of a
// mollified point-mass pair: certified constants (Lipschitz bound of the
// mollifier transform, lattice envelope constant, composite bound A2),
// truncation-defect calibration of the inner mollifier scale, a doubling
// search over cutoff candidates tracking achieved field levels on the
// outer region, and a second stage against the maximal function of the
// stage-one pair on its bounded set.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "brlab/grid.hpp"
#include "brlab/special_functions.hpp"
#include "brlab/util.hpp"

namespace brlab {

// ---------------------------------------------------------------------------
// Part 1: bandwidth-growth curve for the square-function diagonal
// ---------------------------------------------------------------------------

// Joint frequency classes of the diagonal kernel trace: all lattice pairs
// (k, k') with |k|, |k'| <= kmax grouped by (q, s) = (k^2 + k'^2, k + k'),
// sorted by q, with multiplicities.
struct joint_classes {
    std::vector<std::int64_t> q;
    std::vector<int> s;
    std::vector<double> count;
};

inline joint_classes build_joint_classes(int kmax) {
    const std::int64_t big = 4096, off = 2048;
    std::vector<std::int64_t> codes;
    codes.reserve(std::size_t(2 * kmax + 1) * std::size_t(2 * kmax + 1));
    for (int k1 = -kmax; k1 <= kmax; ++k1)
        for (int k2 = -kmax; k2 <= kmax; ++k2)
            codes.push_back((std::int64_t(k1) * k1 + std::int64_t(k2) * k2) *
                                big +
                            (k1 + k2 + off));
    std::sort(codes.begin(), codes.end());
    joint_classes out;
    for (std::size_t i = 0; i < codes.size();) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) ++j;
        out.q.push_back(codes[i] / big);
        out.s.push_back(int(codes[i] % big - off));
        out.count.push_back(double(j - i));
        i = j;
    }
    return out;
}

struct blowup_config {
    int kmax = 256;
    int grid_n = 1024;
    double alpha = 0.5;    // order of the positive-part symbol power
    double dt = 0.05;      // scale-integration step (midpoint in t)
    std::vector<int> sizes = {4, 8, 16, 32, 64, 128, 256};
    double annulus_lo = 0.15, annulus_hi = 0.35;
};

struct blowup_row {
    double size = 0;           // bandwidth N
    double annulus_min = 0;    // min over annulus of 2 x^2 G(x)
    double annulus_stat = 0;   // its square (log-additive variant)
    double quasinorm = 0;      // weak-L^{1/2} quasinorm of G
};

struct blowup_result {
    std::vector<blowup_row> rows;
    std::vector<double> field;  // final G on the grid (centered coords)
};

inline blowup_result blowup_curve(const blowup_config& cfg) {
    const auto cls = build_joint_classes(cfg.kmax);
    const int n = cfg.grid_n;
    const torus_grid<1> g{n, 1.0};
    std::vector<int> bin(cls.s.size());
    for (std::size_t i = 0; i < cls.s.size(); ++i)
        bin[i] = ((cls.s[i] % n) + n) % n;

    std::vector<double> g2(n, 0.0);
    std::vector<cplx> coef(n);
    blowup_result out;
    double tcur = 1.0;
    for (int N : cfg.sizes) {
        for (std::int64_t k = 0;; ++k) {
            const double t = tcur + cfg.dt / 2 + double(k) * cfg.dt;
            if (t >= double(N)) break;
            const double t2 = t * t;
            std::fill(coef.begin(), coef.end(), cplx{0.0, 0.0});
            for (std::size_t i = 0;
                 i < cls.q.size() && double(cls.q[i]) <= t2; ++i) {
                const double u = double(cls.q[i]) / t2;
                const double sym = 2.0 * (cfg.alpha + 1.0) * u *
                                   std::pow(1.0 - u, cfg.alpha);
                coef[bin[i]] += sym * cls.count[i];
            }
            const auto field = g.idft(coef);
            const double wt = cfg.dt / t;
            for (int j = 0; j < n; ++j)
                g2[j] += sqr(field[j].real()) * wt;
        }
        tcur = double(N);

        blowup_row row;
        row.size = double(N);
        std::vector<double> G(n);
        for (int j = 0; j < n; ++j) G[j] = std::sqrt(g2[j]);
        double mn = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            const double x = g.coord(j);
            if (std::abs(x) >= cfg.annulus_lo && std::abs(x) <= cfg.annulus_hi)
                mn = std::min(mn, 2.0 * x * x * G[j]);
        }
        row.annulus_min = mn;
        row.annulus_stat = mn * mn;
        std::vector<double> srt = G;
        std::sort(srt.begin(), srt.end(), std::greater<double>());
        double qn = 0.0;
        for (int k = 0; k < n; ++k)
            qn = std::max(qn, srt[k] * sqr(double(k + 1) / n));
        row.quasinorm = qn;
        out.rows.push_back(row);
        if (N == cfg.sizes.back()) out.field = G;
    }
    return out;
}

// Spectral profile of the window family: flat on |u| <= 1, smooth cutoff
// on 1 <= |u| <= 2.
inline double window_hat(double u) { return 1.0 - smooth_step(std::abs(u) - 1.0); }

// Spatial window value psi(x) = int window_hat(u) e^{2 pi i x u} du.
inline double window_profile(double x) {
    static const gl_rule gl = gauss_legendre(8);
    const int panels = 32;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = 2.0 * p / panels, hi = 2.0 * (p + 1) / panels;
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const double u = c + h * gl.x[i];
            acc += h * gl.w[i] * window_hat(u) *
                   std::cos(2.0 * pi * x * u);
        }
    }
    return 2.0 * acc;
}

// L1 norm of the spatial window; bandwidth-independent for the dilated
// family by change of variables.  Numeric part on |x| <= 12 plus a rigid
// fourth-derivative tail bound.
inline double window_l1_norm() {
    // Simpson on [0, 12]
    const int m = 6000;  // panels
    const double h = 12.0 / (2 * m);
    double acc = std::abs(window_profile(0.0)) +
                 std::abs(window_profile(12.0));
    for (int i = 1; i < 2 * m; ++i)
        acc += std::abs(window_profile(i * h)) * ((i % 2) ? 4.0 : 2.0);
    const double body = acc * h / 3.0;
    // |psi(x)| <= ||4th derivative of window_hat||_1 / (2 pi x)^4
    double d4 = 0.0;
    const double fd = 1e-3;
    for (double u = 0.9; u <= 2.1; u += 1e-3) {
        const double v =
            (window_hat(u - 2 * fd) - 4 * window_hat(u - fd) +
             6 * window_hat(u) - 4 * window_hat(u + fd) +
             window_hat(u + 2 * fd)) /
            (fd * fd * fd * fd);
        d4 += std::abs(v) * 1e-3;
    }
    d4 *= 2.0 * 1.2;  // evenness and finite-difference safety margin
    const double tail = d4 / std::pow(2.0 * pi, 4) / (3.0 * 12.0 * 12.0 * 12.0);
    return 2.0 * (body + tail);
}

// ---------------------------------------------------------------------------
// Part 2: depth-2 divergence search
// ---------------------------------------------------------------------------

// Smooth compactly-supported spectral mollifier with unit mass: profile
// exp(-1/(1-(u/w)^2)) on |u| < w, normalized, with its transform and
// certified constants.
class mollifier {
  public:
    explicit mollifier(double width = 0.5)
        : w_(width), rule_(gauss_legendre(96)) {
        const std::size_t m = rule_.x.size();
        nodes_.resize(m);
        wts_.resize(m);
        vals_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            nodes_[i] = 0.5 * w_ * (rule_.x[i] + 1.0);
            wts_[i] = 0.5 * w_ * rule_.w[i];
            vals_[i] = raw(nodes_[i]);
        }
        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i) z += wts_[i] * vals_[i];
        z *= 2.0;  // even profile, integral over the line
        for (auto& v : vals_) v /= z;
        norm_ = z;
        double b = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            b += wts_[i] * nodes_[i] * vals_[i];
        lip_ = 2.0 * pi * 2.0 * b;
    }

    double width() const { return w_; }

    // normalized spectral profile
    double hat(double u) const { return raw(u) / norm_; }

    // transform Phi(xi) = int hat(u) e^{-2 pi i u xi} du (real, even)
    double transform(double xi) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            acc += wts_[i] * vals_[i] * std::cos(2.0 * pi * nodes_[i] * xi);
        return 2.0 * acc;
    }

    std::vector<double> transform_table(double eps, int mmax) const {
        std::vector<double> t(mmax + 1);
        for (int j = 0; j <= mmax; ++j) t[j] = transform(eps * j);
        return t;
    }

    // 2 pi int |u| hat(u) du: Lipschitz bound of the transform
    double lipschitz_bound() const { return lip_; }

    // int |Phi|
    double transform_abs_integral() const {
        double acc = 0.0;
        const double dx = 1e-3;
        for (double xi = 0.0; xi < 80.0; xi += dx) {
            const double a = std::abs(transform(xi));
            const double b = std::abs(transform(xi + dx));
            acc += 0.5 * (a + b) * dx;
        }
        return 2.0 * acc;
    }

    // sup over eps of eps * sum_m |Phi(eps m)| (lattice envelope constant)
    double lattice_envelope_constant() const {
        double best = transform_abs_integral();
        const auto eg = geomspace(2e-3, 1.0, 30);
        for (double eps : eg) {
            const int mmax = int(80.0 / eps) + 2;
            double s = std::abs(transform(0.0));
            for (int j = 1; j <= mmax; ++j)
                s += 2.0 * std::abs(transform(eps * j));
            best = std::max(best, eps * s);
        }
        return best;
    }

  private:
    double raw(double u) const {
        const double r = std::abs(u) / w_;
        if (r >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - r * r));
    }

    double w_;
    gl_rule rule_;
    std::vector<double> nodes_, wts_, vals_;
    double norm_ = 1.0, lip_ = 0.0;
};

// Periodized spatial mollifier at scale eps: sum_m hat((x+m)/eps)/eps.
inline double periodic_mollifier(const mollifier& mo, double eps, double x) {
    const int mimg = int(std::ceil(eps * mo.width())) + 1;
    double acc = 0.0;
    for (int m = -mimg; m <= mimg; ++m)
        acc += mo.hat((x + m) / eps) / eps;
    return acc;
}

// Replicate a half-open arithmetic progression lo, lo+step, ... < hi.
inline std::vector<double> arange(double lo, double hi, double step) {
    const int count = int(std::ceil((hi - lo) / step - 1e-9));
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = lo + k * step;
    return out;
}

// Max over R in the grid and cells in the mask of the order-1/2 spherical
// cutoff field of the periodic point mass.
inline double dirac_field_max(const torus_grid<1>& g,
                              const std::vector<double>& rgrid,
                              const std::vector<char>& mask) {
    const int n = g.n;
    double best = 0.0;
    std::vector<cplx> coef(n);
    for (double R : rgrid) {
        const int mmax = int(std::floor(R));
        std::fill(coef.begin(), coef.end(), cplx{0.0, 0.0});
        for (int m = -mmax; m <= mmax; ++m) {
            const double u = double(m) / R;
            coef[((m % n) + n) % n] += std::sqrt(std::max(0.0, 1.0 - u * u));
        }
        const auto f = g.idft(coef);
        for (int j = 0; j < n; ++j)
            if (mask[j]) best = std::max(best, std::abs(f[j].real()));
    }
    return best;
}

// All lattice pairs with q = m1^2 + m2^2 <= rmax^2, sorted by q, with the
// grid fold of m1 + m2 precomputed.
struct pair_table {
    std::vector<double> q;
    std::vector<std::int32_t> abs1, abs2;
    std::vector<std::int32_t> bin;
};

inline pair_table build_pair_table(int rmax, int grid_n) {
    struct rec {
        std::int64_t q;
        std::int32_t m1, m2;
    };
    std::vector<rec> recs;
    recs.reserve(std::size_t(3.2 * rmax * rmax) + 16);
    for (int m1 = -rmax; m1 <= rmax; ++m1)
        for (int m2 = -rmax; m2 <= rmax; ++m2) {
            const std::int64_t q =
                std::int64_t(m1) * m1 + std::int64_t(m2) * m2;
            if (q <= std::int64_t(rmax) * rmax)
                recs.push_back({q, m1, m2});
        }
    std::stable_sort(recs.begin(), recs.end(),
                     [](const rec& a, const rec& b) { return a.q < b.q; });
    pair_table P;
    P.q.reserve(recs.size());
    P.abs1.reserve(recs.size());
    P.abs2.reserve(recs.size());
    P.bin.reserve(recs.size());
    for (const auto& r : recs) {
        P.q.push_back(double(r.q));
        P.abs1.push_back(std::abs(r.m1));
        P.abs2.push_back(std::abs(r.m2));
        const int s = r.m1 + r.m2;
        P.bin.push_back(((s % grid_n) + grid_n) % grid_n);
    }
    return P;
}

// For each per-pair weight set, track the per-cell running max of the
// cutoff field over the R grid and the per-R max over the mask.
struct scan_result {
    std::vector<std::vector<double>> run;   // [set][cell]
    std::vector<std::vector<double>> hist;  // [set][r index]
};

inline scan_result field_scan(const pair_table& P,
                              const std::vector<const std::vector<double>*>& w,
                              const torus_grid<1>& g,
                              const std::vector<double>& rgrid,
                              const std::vector<char>& mask) {
    const int n = g.n;
    scan_result out;
    out.run.assign(w.size(), std::vector<double>(n, 0.0));
    out.hist.assign(w.size(), std::vector<double>(rgrid.size(), 0.0));
    std::vector<double> wbr(P.q.size());
    std::vector<cplx> coef(n);
    for (std::size_t ir = 0; ir < rgrid.size(); ++ir) {
        const double R = rgrid[ir];
        const double r2 = R * R;
        const std::size_t hi =
            std::upper_bound(P.q.begin(), P.q.end(), r2) - P.q.begin();
        for (std::size_t i = 0; i < hi; ++i)
            wbr[i] = std::sqrt(1.0 - P.q[i] / r2);
        for (std::size_t ks = 0; ks < w.size(); ++ks) {
            const auto& W = *w[ks];
            std::fill(coef.begin(), coef.end(), cplx{0.0, 0.0});
            for (std::size_t i = 0; i < hi; ++i)
                coef[P.bin[i]] += W[i] * wbr[i];
            const auto f = g.idft(coef);
            auto& run = out.run[ks];
            double hmax = 0.0;
            for (int j = 0; j < n; ++j) {
                const double v = std::abs(f[j].real());
                run[j] = std::max(run[j], v);
                if (mask[j]) hmax = std::max(hmax, v);
            }
            out.hist[ks][ir] = hmax;
        }
    }
    return out;
}

// Truncation defect of replacing the unit coefficient by Phi(eps m) on the
// given slot: 2^{-2} sum over pairs with q <= R2^2 of the cutoff weight
// times |1 - Phi(eps m_slot)|, optionally scaled.
inline double truncation_defect(const pair_table& P, const mollifier& mo,
                                double eps, double r2cut, int slot,
                                int rmax, double scale = 1.0) {
    const auto tab = mo.transform_table(eps, rmax);
    const double r2 = r2cut * r2cut;
    const std::size_t hi =
        std::upper_bound(P.q.begin(), P.q.end(), r2) - P.q.begin();
    const auto& am = (slot == 1) ? P.abs1 : P.abs2;
    double acc = 0.0;
    for (std::size_t i = 0; i < hi; ++i)
        acc += std::sqrt(1.0 - P.q[i] / r2) * std::abs(1.0 - tab[am[i]]);
    return 0.25 * acc * scale;
}

// Largest eps <= cap with truncation defect <= 1 (bisection; the defect
// is increasing in eps).
inline double pick_inner_scale(const pair_table& P, const mollifier& mo,
                               double r2cut, double cap, int slot, int rmax,
                               double scale = 1.0) {
    if (truncation_defect(P, mo, cap, r2cut, slot, rmax, scale) <= 1.0)
        return cap;
    double lo = 0.0, hi = cap;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (truncation_defect(P, mo, mid, r2cut, slot, rmax, scale) <= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

struct construction_config {
    int grid_n = 512;
    double eps0 = 1.0 / 2048.0;
    double mollifier_width = 0.5;
    int rmax = 512;
    double scan_step = 0.1;       // stage-one R resolution
    double scan_step_two = 0.2;   // stage-two R resolution
    double scan_limit = 512.0;    // cap on the R scans
    bool run_stage_two = true;
    std::vector<int> doubling = {16, 32, 64, 128, 256, 512};
    double level_goal = 2.0;      // depth target on the outer region
};

struct construction_report {
    // certified constants
    double c_near = 0, c_far = 0, c_const = 0;   // field sup constants
    double lip = 0;                              // transform Lipschitz bound
    double delta2 = 0;                           // outer mollifier scale
    double envelope = 0;                         // lattice envelope constant
    double a2 = 0;                               // composite bound
    // inner-scale calibration per doubling candidate
    std::vector<double> eps_by_candidate;
    std::vector<double> defect_by_candidate;
    // stage-one scan
    double eps2 = 0;                             // inner scale at rmax
    std::vector<double> level_by_candidate;      // cummax field level at R2
    std::vector<double> reference_by_candidate;  // smooth-part field level
    std::vector<double> threshold_by_candidate;  // unsplit-pair field level
    int found_r2 = -1;
    double achieved_level = 0, achieved_x = 0;
    double refined_level = 0, peak_r = 0;
    int level_mask_cells = 0, threshold_mask_cells = 0;
    std::vector<char> level_mask;
    // stage two
    double f_l1 = 0, mf_min = 0, mf_max = 0;
    int bound_n = 0;
    double f_measure = 0;
    double delta2p = 0, b2 = 0, eps2p = 0;
    std::vector<double> f_level_by_candidate, reference1_by_candidate;
};

inline construction_report run_construction(const construction_config& cfg) {
    construction_report rep;
    const int n = cfg.grid_n;
    const torus_grid<1> g{n, 1.0};
    std::vector<char> all_mask(n, 1), e_mask(n, 0);
    for (int j = 0; j < n; ++j)
        e_mask[j] = std::abs(g.coord(j)) >= 0.1 ? 1 : 0;

    // field sup constants on short and long cutoff ranges
    rep.c_near = dirac_field_max(g, arange(0.2, 10.0001, 0.01), all_mask);
    rep.c_far = std::max(
        dirac_field_max(g, arange(10.02, 300.0, 0.02), e_mask),
        dirac_field_max(g, arange(300.0, 4.0 * n, 0.5), e_mask));
    rep.c_const = std::max(rep.c_near, rep.c_far);

    const mollifier mo(cfg.mollifier_width);
    rep.lip = mo.lipschitz_bound();
    rep.delta2 = 1.0 / (2.0 * rep.lip);
    rep.envelope = mo.lattice_envelope_constant();
    rep.a2 = rep.c_const * rep.envelope * (0.25 / rep.delta2 + 1.0);

    const auto P = build_pair_table(cfg.rmax, n);

    for (int r2c : cfg.doubling) {
        const double e = std::min(
            pick_inner_scale(P, mo, double(r2c), rep.delta2, 1, cfg.rmax),
            rep.delta2);
        rep.eps_by_candidate.push_back(e);
        rep.defect_by_candidate.push_back(
            truncation_defect(P, mo, e, double(r2c), 1, cfg.rmax));
    }
    rep.eps2 = rep.eps_by_candidate.back();

    // stage-one weights: split pair, smooth reference part, unsplit pair
    const auto tab_e2 = mo.transform_table(rep.eps2, cfg.rmax);
    const auto tab_d2 = mo.transform_table(rep.delta2, cfg.rmax);
    const auto tab_e0 = mo.transform_table(cfg.eps0, cfg.rmax);
    const std::size_t np = P.q.size();
    std::vector<double> w_tr(np), w_d2(np), w_thr(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double outer = tab_e0[P.abs2[i]];
        w_tr[i] = 0.25 * (tab_e2[P.abs1[i]] - tab_d2[P.abs1[i]]) * outer;
        w_d2[i] = 0.25 * tab_d2[P.abs1[i]] * outer;
        w_thr[i] = 0.25 * tab_e0[P.abs1[i]] * outer;
    }
    const auto rgrid = arange(1.0, cfg.scan_limit + 1e-4, cfg.scan_step);
    const auto scan =
        field_scan(P, {&w_tr, &w_d2, &w_thr}, g, rgrid, e_mask);

    // cumulative level at each doubling candidate
    {
        std::vector<double> c_tr(rgrid.size()), c_d2(rgrid.size()),
            c_th(rgrid.size());
        double a = 0, b = 0, c = 0;
        for (std::size_t i = 0; i < rgrid.size(); ++i) {
            a = std::max(a, scan.hist[0][i]);
            b = std::max(b, scan.hist[1][i]);
            c = std::max(c, scan.hist[2][i]);
            c_tr[i] = a;
            c_d2[i] = b;
            c_th[i] = c;
        }
        for (int r2c : cfg.doubling) {
            if (double(r2c) > rgrid.back() + 1e-9) break;
            const std::size_t ir =
                std::upper_bound(rgrid.begin(), rgrid.end(),
                                 double(r2c) + 1e-9) -
                rgrid.begin() - 1;
            rep.level_by_candidate.push_back(c_tr[ir]);
            rep.reference_by_candidate.push_back(c_d2[ir]);
            rep.threshold_by_candidate.push_back(c_th[ir]);
            if (rep.found_r2 < 0 && c_tr[ir] >= cfg.level_goal)
                rep.found_r2 = r2c;
        }
    }

    // masks and achieved level from the per-cell running max
    rep.level_mask.assign(n, 0);
    int best_cell = -1;
    for (int j = 0; j < n; ++j) {
        if (!e_mask[j]) continue;
        if (scan.run[0][j] >= cfg.level_goal) {
            rep.level_mask[j] = 1;
            ++rep.level_mask_cells;
        }
        if (scan.run[2][j] > rep.a2 + 4.0) ++rep.threshold_mask_cells;
        if (scan.run[0][j] > rep.achieved_level) {
            rep.achieved_level = scan.run[0][j];
            best_cell = j;
        }
    }
    rep.achieved_x = best_cell >= 0 ? g.coord(best_cell) : 0.0;

    // refinement near the best cell: coarse peak R, then fine rescan
    if (best_cell >= 0) {
        std::vector<double> wc(np);
        const double xc = g.coord(best_cell);
        // At a grid cell x = j/n the pair contributes through cos(2 pi s x)
        // with s = m1 + m2, and s can be replaced by its fold k (mod n)
        // exactly, since (s - k) x is an integer there.
        for (std::size_t i = 0; i < np; ++i) {
            const int b = P.bin[i];
            const int k = (b < n / 2) ? b : b - n;
            const double ang = 2.0 * pi * k * xc;
            wc[i] = 0.25 * (tab_e2[P.abs1[i]] - tab_d2[P.abs1[i]]) *
                    tab_e0[P.abs2[i]] * std::cos(ang);
        }
        double coarse = 0.0, rpk = rgrid.front();
        for (double R : rgrid) {
            const double r2 = R * R;
            const std::size_t hi =
                std::upper_bound(P.q.begin(), P.q.end(), r2) - P.q.begin();
            double acc = 0.0;
            for (std::size_t i = 0; i < hi; ++i)
                acc += std::sqrt(1.0 - P.q[i] / r2) * wc[i];
            if (std::abs(acc) > coarse) {
                coarse = std::abs(acc);
                rpk = R;
            }
        }
        rep.peak_r = rpk;
        double fine = 0.0;
        for (double R = std::max(1.0, rpk - 0.3); R < rpk + 0.3; R += 0.002) {
            const double r2 = R * R;
            const std::size_t hi =
                std::upper_bound(P.q.begin(), P.q.end(), r2) - P.q.begin();
            double acc = 0.0;
            for (std::size_t i = 0; i < hi; ++i)
                acc += std::sqrt(1.0 - P.q[i] / r2) * wc[i];
            fine = std::max(fine, std::abs(acc));
        }
        rep.refined_level = fine;
    }

    if (!cfg.run_stage_two) return rep;

    // ---- stage two ----
    // spatial L1 norm of the stage-one pair: coarse grid plus a refined
    // spike zone around the origin
    const int nc = 200001;
    std::vector<double> xs(nc), fsp(nc);
    for (int i = 0; i < nc; ++i) {
        xs[i] = -0.5 + double(i) / (nc - 1);
        fsp[i] = 0.25 * (periodic_mollifier(mo, rep.eps2, xs[i]) -
                         periodic_mollifier(mo, rep.delta2, xs[i]));
    }
    auto trap_abs = [](const std::vector<double>& x,
                       const std::vector<double>& f) {
        double acc = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i)
            acc += 0.5 * (std::abs(f[i]) + std::abs(f[i - 1])) *
                   (x[i] - x[i - 1]);
        return acc;
    };
    const double l1_coarse = trap_abs(xs, fsp);
    auto lerp_coarse = [&](double x) {
        const double t = (x + 0.5) * (nc - 1);
        const int i0 = std::clamp(int(std::floor(t)), 0, nc - 2);
        const double fr = t - i0;
        return fsp[i0] * (1.0 - fr) + fsp[i0 + 1] * fr;
    };
    const int nf = 40001;
    const double zone = 2.0 * rep.eps2 * mo.width();
    std::vector<double> xs2(nf), f_fine(nf), f_cover(nf);
    for (int i = 0; i < nf; ++i) {
        xs2[i] = -zone + 2.0 * zone * double(i) / (nf - 1);
        f_fine[i] = 0.25 * (periodic_mollifier(mo, rep.eps2, xs2[i]) -
                            periodic_mollifier(mo, rep.delta2, xs2[i]));
        f_cover[i] = lerp_coarse(xs2[i]);
    }
    const double spike_extra = trap_abs(xs2, f_fine) - trap_abs(xs2, f_cover);
    rep.f_l1 = l1_coarse + spike_extra;

    // maximal function of |f| on the grid cells over a dyadic radius ladder
    std::vector<double> pref(nc, 0.0);
    for (int i = 1; i < nc; ++i)
        pref[i] = pref[i - 1] + 0.5 * (std::abs(fsp[i]) +
                                       std::abs(fsp[i - 1])) *
                                    (xs[i] - xs[i - 1]);
    const double tot = pref.back() + spike_extra;
    auto prefix_at = [&](double x) {
        const double xm = x - std::floor(x + 0.5);  // wrap to [-1/2, 1/2)
        const double t = (xm + 0.5) * (nc - 1);
        const int i0 = std::clamp(int(std::floor(t)), 0, nc - 2);
        const double fr = t - i0;
        const double base = pref[i0] * (1.0 - fr) + pref[i0 + 1] * fr;
        const double wraps = std::floor(x + 0.5);
        return base + (xm >= 0.0 ? spike_extra : 0.0) + wraps * tot;
    };
    std::vector<double> mf(n, 0.0);
    for (int k = 0; k <= 36; ++k) {
        const double r = std::pow(2.0, -9.0 + 0.25 * k);
        for (int j = 0; j < n; ++j) {
            const double xc = g.coord(j);
            const double avg =
                (prefix_at(xc + r) - prefix_at(xc - r)) / (2.0 * r);
            mf[j] = std::max(mf[j], avg);
        }
    }
    rep.mf_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
        if (e_mask[j]) {
            rep.mf_min = std::min(rep.mf_min, mf[j]);
            rep.mf_max = std::max(rep.mf_max, mf[j]);
        }
    int nb = 1;
    for (;;) {
        int over = 0;
        for (int j = 0; j < n; ++j)
            if (e_mask[j] && mf[j] > nb) ++over;
        if (double(over) / n < 0.2) break;
        nb *= 2;
    }
    rep.bound_n = nb;
    std::vector<char> f_mask(n, 0);
    int fc = 0;
    for (int j = 0; j < n; ++j)
        if (e_mask[j] && mf[j] <= nb) {
            f_mask[j] = 1;
            ++fc;
        }
    rep.f_measure = double(fc) / n;

    rep.delta2p = 1.0 / (2.0 * rep.lip * rep.f_l1);
    rep.b2 = nb * rep.envelope * (0.25 / rep.delta2p + 1.0);
    rep.eps2p = std::min(pick_inner_scale(P, mo, double(cfg.rmax),
                                          rep.delta2p, 2, cfg.rmax, rep.f_l1),
                         rep.delta2p);

    const auto tab_e2p = mo.transform_table(rep.eps2p, cfg.rmax);
    const auto tab_d2p = mo.transform_table(rep.delta2p, cfg.rmax);
    std::vector<double> w2_tr(np), w2_d2(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double first = 0.25 * (tab_e2[P.abs1[i]] - tab_d2[P.abs1[i]]);
        w2_tr[i] =
            first * 0.25 * (tab_e2p[P.abs2[i]] - tab_d2p[P.abs2[i]]);
        w2_d2[i] = first * 0.25 * tab_d2p[P.abs2[i]];
    }
    const auto rgrid2 =
        arange(1.0, cfg.scan_limit + 1e-4, cfg.scan_step_two);
    const auto scan2 = field_scan(P, {&w2_tr, &w2_d2}, g, rgrid2, f_mask);
    {
        double a = 0, b = 0;
        std::vector<double> ca(rgrid2.size()), cb(rgrid2.size());
        for (std::size_t i = 0; i < rgrid2.size(); ++i) {
            a = std::max(a, scan2.hist[0][i]);
            b = std::max(b, scan2.hist[1][i]);
            ca[i] = a;
            cb[i] = b;
        }
        for (int r2c : cfg.doubling) {
            if (double(r2c) > rgrid2.back() + 1e-9) break;
            const std::size_t ir =
                std::upper_bound(rgrid2.begin(), rgrid2.end(),
                                 double(r2c) + 1e-9) -
                rgrid2.begin() - 1;
            rep.f_level_by_candidate.push_back(ca[ir]);
            rep.reference1_by_candidate.push_back(cb[ir]);
        }
    }
    return rep;
}

}  // namespace brlab
