// Long-time averages of point-mass ball means on the 2-d torus:
//   avg(lambda, T) = (1/T) int_1^T K_R(x0, x0) e^{2 pi i lambda R} dR,
//   K_R(x) = sum_{|m| <= R} (1 - |m|^2/R^2)^{1/2} e^{2 pi i x.(m1+m2)},
// evaluated per squared-radius class q = |m|^2 with weights G(q), each
// class integral done by a graded-panel Filon rule (Chebyshev amplitude
// interpolation against exact oscillatory moments), accelerated by hybrid
// interpolation tables in the class radius.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "brlab/special_functions.hpp"
#include "brlab/util.hpp"

namespace brlab {

namespace filon {

constexpr int kDeg = 9;
constexpr int kN = kDeg + 1;

struct cheb_basis {
    std::array<double, kN> nodes{};   // cos(pi (i+1/2)/kN)
    std::array<std::array<double, kN>, kN> v2m{};  // values -> monomials
    cheb_basis() {
        for (int i = 0; i < kN; ++i)
            nodes[i] = std::cos(pi * (i + 0.5) / kN);
        // coefficients matrix: f(nodes) -> chebyshev coefficients
        std::array<std::array<double, kN>, kN> C{};
        for (int k = 0; k < kN; ++k)
            for (int i = 0; i < kN; ++i) {
                C[k][i] = (2.0 / kN) * std::cos(k * pi * (i + 0.5) / kN);
                if (k == 0) C[k][i] *= 0.5;
            }
        // chebyshev -> power basis by the three-term recurrence
        std::array<std::array<double, kN>, kN> t{};  // t[k][p] coeff of s^p
        t[0][0] = 1.0;
        t[1][1] = 1.0;
        for (int k = 2; k < kN; ++k)
            for (int p = 0; p < kN; ++p) {
                double v = -t[k - 2][p];
                if (p > 0) v += 2.0 * t[k - 1][p - 1];
                t[k][p] = v;
            }
        for (int p = 0; p < kN; ++p)
            for (int i = 0; i < kN; ++i) {
                double v = 0.0;
                for (int k = 0; k < kN; ++k) v += t[k][p] * C[k][i];
                v2m[p][i] = v;
            }
    }
};

inline const cheb_basis& basis() {
    static const cheb_basis b;
    return b;
}

// Oscillatory moments m_k(theta) = int_{-1}^{1} s^k e^{i theta s} ds.
inline std::array<cplx, kN> moments(double theta) {
    std::array<cplx, kN> out{};
    if (std::abs(theta) <= 12.0) {
        constexpr int J = 64;
        std::array<cplx, J + 1> pw{};
        pw[0] = cplx{1.0, 0.0};
        const cplx it{0.0, theta};
        for (int j = 1; j <= J; ++j) pw[j] = pw[j - 1] * it / double(j);
        for (int k = 0; k < kN; ++k) {
            cplx acc{0.0, 0.0};
            for (int j = (k % 2 == 0) ? 0 : 1; j <= J; j += 2)
                acc += pw[j] * (2.0 / (k + j + 1));
            out[k] = acc;
        }
        return out;
    }
    const cplx itheta{0.0, theta};
    const cplx eip = std::exp(itheta), eim = std::exp(-itheta);
    cplx mk = (eip - eim) / itheta;
    out[0] = mk;
    for (int k = 1; k < kN; ++k) {
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        mk = (eip - sgn * eim) / itheta - (double(k) / itheta) * mk;
        out[k] = mk;
    }
    return out;
}

struct panel {
    double c;
    double h;
};

// Geometrically graded panels from the inner edge rho toward T; the first
// panel width shrinks with the square-root edge at R = rho.
inline std::vector<panel> panels(double rho, double T, double frac = 0.2) {
    std::vector<panel> out;
    const double d0 = 1e-8 * std::max(rho, 1.0);
    double pos = rho + d0;
    while (pos < T * (1.0 - 1e-14)) {
        double w = frac * std::min(pos - rho, pos);
        w = std::min(w, T - pos);
        out.push_back({pos + 0.5 * w, 0.5 * w});
        pos += w;
    }
    return out;
}

// int_rho^T sqrt(1 - rho^2/R^2) e^{i w R} dR.
inline cplx integral(double rho, double w, double T) {
    if (rho >= T * (1.0 - 1e-14)) return cplx{0.0, 0.0};
    if (std::abs(w) * T < 5.0) {
        if (std::abs(w) < 1e-300 && rho >= 1.0)
            return cplx{std::sqrt(T * T - rho * rho) -
                            rho * std::acos(rho / T),
                        0.0};
        static const gl_rule gl = gauss_legendre(48);
        cplx acc{0.0, 0.0};
        for (const auto& p : panels(rho, T)) {
            cplx s{0.0, 0.0};
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                const double R = p.c + p.h * gl.x[i];
                const double q = 1.0 - (rho / R) * (rho / R);
                const double amp = q > 0.0 ? std::sqrt(q) : 0.0;
                s += gl.w[i] * amp * std::exp(cplx{0.0, w * R});
            }
            acc += p.h * s;
        }
        return acc;
    }
    const auto& b = basis();
    cplx acc{0.0, 0.0};
    for (const auto& p : panels(rho, T)) {
        std::array<double, kN> amp{};
        for (int i = 0; i < kN; ++i) {
            const double R = p.c + p.h * b.nodes[i];
            const double q = 1.0 - (rho / R) * (rho / R);
            amp[i] = q > 0.0 ? std::sqrt(q) : 0.0;
        }
        const auto mom = moments(w * p.h);
        cplx val{0.0, 0.0};
        for (int pw = 0; pw < kN; ++pw) {
            double mono = 0.0;
            for (int i = 0; i < kN; ++i) mono += b.v2m[pw][i] * amp[i];
            val += mono * mom[pw];
        }
        acc += p.h * std::exp(cplx{0.0, w * p.c}) * val;
    }
    return acc;
}

// Closed form at zero frequency: int_rho^T sqrt(1-rho^2/R^2) dR.
inline double integral_zero_freq(double rho, double T) {
    if (rho >= T) return 0.0;
    return std::sqrt(T * T - rho * rho) - rho * std::acos(rho / T);
}

}  // namespace filon

// Class weights G(q) = sum_{m1^2+m2^2 = q} cos(2 pi x0 (m1+m2)), q <= T^2.
inline std::vector<double> build_class_weights(double x0, int T) {
    const std::int64_t qmax = std::int64_t(T) * T;
    std::vector<double> G(qmax + 1, 0.0);
    std::vector<double> ctab(4 * std::size_t(T) + 1);
    for (std::size_t s = 0; s < ctab.size(); ++s)
        ctab[s] = std::cos(2.0 * pi * x0 * (double(s) - 2.0 * T));
    for (int m1 = -T; m1 <= T; ++m1) {
        const std::int64_t rem = qmax - std::int64_t(m1) * m1;
        const int lim = int(std::floor(std::sqrt(double(rem))));
        const std::int64_t m1sq = std::int64_t(m1) * m1;
        const int base = m1 + 2 * T;
        for (int m2 = -lim; m2 <= lim; ++m2)
            G[m1sq + std::int64_t(m2) * m2] += ctab[base + m2];
    }
    return G;
}

struct spectrum_line {
    double lambda;
    int mult;
};

// Distances from the diagonal point (x0, x0) to the integer lattice,
// grouped with multiplicities: the discrete frequencies of the average.
inline std::vector<spectrum_line> point_spectrum(double x0, int max_m) {
    std::map<std::int64_t, int> counts;
    for (int m1 = -max_m; m1 <= max_m; ++m1)
        for (int m2 = -max_m; m2 <= max_m; ++m2) {
            const double d2 = sqr(x0 - m1) + sqr(x0 - m2);
            counts[llround(d2 * 1e10)] += 1;
        }
    std::vector<spectrum_line> out;
    for (const auto& [key, c] : counts)
        out.push_back({std::sqrt(double(key) * 1e-10), c});
    return out;
}

// Time-average engine over the class decomposition.
class avg_engine {
  public:
    avg_engine(const std::vector<double>* G, int T, double rho_direct = 40.0,
               double geo_ratio = 1.02, double lin_osc_frac = 0.0625)
        : G_(G),
          T_(T),
          qmax_(std::int64_t(T) * T),
          rho_direct_(std::min(rho_direct, T / 2.0)),
          geo_ratio_(geo_ratio),
          lin_osc_frac_(lin_osc_frac) {}

    int horizon() const { return T_; }

    // K_T at the base point: plain class sum at the window edge.
    double KT() {
        if (!have_kt_) {
            const auto& G = *G_;
            double acc = 0.0;
            const double inv = 1.0 / double(qmax_);
            for (std::int64_t q = 0; q <= qmax_; ++q) {
                if (G[q] == 0.0) continue;
                const double v = 1.0 - double(q) * inv;
                if (v > 0.0) acc += G[q] * std::sqrt(v);
            }
            kt_ = acc;
            have_kt_ = true;
        }
        return kt_;
    }

    cplx avg(double lam) {
        const std::int64_t key = llround(std::abs(lam) * 1e12);
        auto it = cache_.find(key);
        cplx v;
        if (it != cache_.end()) {
            v = it->second;
        } else {
            v = avg_abs(std::abs(lam));
            cache_.emplace(key, v);
        }
        return lam >= 0.0 ? v : std::conj(v);
    }

    // Interior average: the sharp-window edge term removed.
    cplx avg_int(double lam) {
        const double w = 2.0 * pi * lam;
        return avg(lam) -
               std::exp(cplx{0.0, w * T_}) * (KT() / (cplx{0.0, w * T_}));
    }

    // Window integrals evaluated through the interpolation tables, for
    // accuracy diagnostics against direct quadrature.
    std::vector<cplx> table_integrals(const std::vector<double>& rhos,
                                      double lam) {
        const double w = 2.0 * pi * lam;
        const auto [geo, lin] = build_tables(lam);
        const double ls = lin_start(w);
        std::vector<cplx> out;
        out.reserve(rhos.size());
        for (double rho : rhos) {
            const bool in_geo = rho < ls;
            out.push_back(I_from_table(rho, w, in_geo ? geo : lin, in_geo));
        }
        return out;
    }

    // Same integral by direct graded-panel quadrature.
    cplx direct_integral(double rho, double lam) const {
        return filon::integral(rho, 2.0 * pi * lam, double(T_));
    }

  private:
    // Endpoint-ripple term of the class integral near rho -> T.
    cplx E_term(double rho, double w) const {
        const double vT2 = 1.0 - sqr(rho / T_);
        const double vT = std::sqrt(std::max(vT2, 1e-300));
        return std::exp(cplx{0.0, w * (T_ - rho)}) * (rho * rho) /
               (w * w * vT * double(T_) * double(T_) * double(T_));
    }

    double lin_start(double w) const {
        const double f =
            std::min(std::max(1.0 - 60.0 / (std::abs(w) * T_), 0.5), 0.997);
        return T_ * f;
    }

    struct table {
        std::vector<double> ln_nodes;  // interpolation coordinate
        std::vector<cplx> values;
        double x0 = 0.0, dx = 0.0;  // uniform locator (ln rho / rho)
        bool locate_in_log = true;
        bool subtracted = false;
    };

    table make_table(const std::vector<double>& nodes, double w,
                     bool subtract, bool locate_in_log) {
        table t;
        t.subtracted = subtract;
        t.locate_in_log = locate_in_log;
        t.ln_nodes.resize(nodes.size());
        t.values.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double rho = nodes[i];
            t.ln_nodes[i] = std::log(rho);
            const cplx I = filon::integral(rho, w, T_);
            const double vq = 1.0 - sqr(rho / T_);
            const cplx Q =
                cplx{vq > 0.0 ? std::sqrt(vq) : 0.0, 0.0} / cplx{0.0, w};
            cplx P = (I - std::exp(cplx{0.0, w * T_}) * Q) *
                     std::exp(cplx{0.0, -w * rho});
            if (subtract) P -= E_term(rho, w);
            t.values[i] = P;
        }
        if (locate_in_log) {
            t.x0 = t.ln_nodes[0];
            t.dx = nodes.size() > 1 ? (t.ln_nodes[1] - t.ln_nodes[0]) : 1.0;
        } else {
            t.x0 = nodes[0];
            t.dx = nodes.size() > 1 ? (nodes[1] - nodes[0]) : 1.0;
        }
        return t;
    }

    std::pair<table, table> build_tables(double lam) {
        const double w = 2.0 * pi * lam;
        const double ls = lin_start(w);
        std::vector<double> geo;
        for (double r = rho_direct_; r < ls; r *= geo_ratio_)
            geo.push_back(r);
        geo.push_back(ls * (1.0 + 1e-12));
        const double step = lin_osc_frac_ * pi / std::abs(lam);
        const int nlin =
            std::max(8, int(std::ceil((T_ - ls) / step)));
        std::vector<double> lin(nlin + 1);
        for (int i = 0; i <= nlin; ++i)
            lin[i] = ls * (1.0 - 1e-12) +
                     (T_ * (1.0 - 1e-9) - ls * (1.0 - 1e-12)) * i / nlin;
        return {make_table(geo, w, true, true),
                make_table(lin, w, false, false)};
    }

    // Class integral from the table: 4-point Lagrange in ln rho.
    cplx I_from_table(double rho, double w, const table& t,
                      bool add_ripple) const {
        const int n = int(t.ln_nodes.size());
        const double lr = std::log(rho);
        const double loc = t.locate_in_log ? lr : rho;
        int idx = int(std::floor((loc - t.x0) / t.dx));
        if (idx < 1) idx = 1;
        if (idx > n - 3) idx = n - 3;
        const double x =
            std::min(std::max(lr, t.ln_nodes[0]), t.ln_nodes[n - 1]);
        cplx P{0.0, 0.0};
        for (int a = -1; a <= 2; ++a) {
            double L = 1.0;
            for (int b = -1; b <= 2; ++b) {
                if (b == a) continue;
                L *= (x - t.ln_nodes[idx + b]) /
                     (t.ln_nodes[idx + a] - t.ln_nodes[idx + b]);
            }
            P += L * t.values[idx + a];
        }
        if (add_ripple) P += E_term(rho, w);
        const double vq = 1.0 - sqr(rho / T_);
        const cplx Q = cplx{vq > 0.0 ? std::sqrt(vq) : 0.0, 0.0} / cplx{0.0, w};
        return std::exp(cplx{0.0, w * T_}) * Q +
               std::exp(cplx{0.0, w * rho}) * P;
    }

    cplx avg_abs(double lam) {
        const auto& G = *G_;
        const double Td = double(T_);
        if (lam == 0.0) {
            double tot = G[0] * (Td - 1.0);
            for (std::int64_t q = 1; q <= qmax_; ++q) {
                if (G[q] == 0.0) continue;
                tot += G[q] * filon::integral_zero_freq(std::sqrt(double(q)), Td);
            }
            return cplx{tot / Td, 0.0};
        }
        const double w = 2.0 * pi * lam;
        cplx total = G[0] * (std::exp(cplx{0.0, w * Td}) -
                             std::exp(cplx{0.0, w})) /
                     cplx{0.0, w};
        const std::int64_t qd =
            std::min<std::int64_t>(qmax_, std::int64_t(rho_direct_ * rho_direct_));
        for (std::int64_t q = 1; q <= qd; ++q) {
            if (G[q] == 0.0) continue;
            const double rho = std::sqrt(double(q));
            if (rho < Td) total += G[q] * filon::integral(rho, w, Td);
        }
        if (qd < qmax_) {
            const auto [geo, lin] = build_tables(lam);
            const double ls = lin_start(w);
            const double cut = Td * (1.0 - 1e-12);
            for (std::int64_t q = qd + 1; q <= qmax_; ++q) {
                if (G[q] == 0.0) continue;
                const double rho = std::sqrt(double(q));
                if (rho >= cut) continue;
                const bool in_geo = rho < ls;
                total += G[q] * I_from_table(rho, w,
                                             in_geo ? geo : lin, in_geo);
            }
        }
        return total / Td;
    }

    const std::vector<double>* G_;
    int T_;
    std::int64_t qmax_;
    double rho_direct_, geo_ratio_, lin_osc_frac_;
    std::map<std::int64_t, cplx> cache_;
    double kt_ = 0.0;
    bool have_kt_ = false;
};

// Midpoint-rule oracle for the same average, independent of the Filon
// machinery: direct O(T/dR * #classes) evaluation.
inline cplx avg_brute(const std::vector<double>& G, int T, double lam,
                      double dR) {
    std::vector<std::int64_t> qs;
    for (std::int64_t q = 0; q < std::int64_t(G.size()); ++q)
        if (G[q] != 0.0) qs.push_back(q);
    cplx total{0.0, 0.0};
    const double w = 2.0 * pi * lam;
    for (double R = 1.0 + dR / 2; R < T; R += dR) {
        double K = 0.0;
        const double R2 = R * R;
        for (std::int64_t q : qs) {
            const double v = 1.0 - double(q) / R2;
            if (v > 0.0) K += G[q] * std::sqrt(v);
        }
        total += K * std::exp(cplx{0.0, w * R}) * dR;
    }
    return total / double(T);
}

// Multiplicative increments over the first few spectrum lines: partial
// products of (1 - cos) factors expanded into +-1 frequency choices.
inline std::vector<cplx> riesz_product_levels(avg_engine& eng,
                                              const std::vector<double>& lams,
                                              int levels) {
    std::vector<cplx> out;
    for (int N = 0; N <= levels; ++N) {
        cplx tot{0.0, 0.0};
        // enumerate choices in {0, +1, -1}^N by base-3 counter
        std::int64_t total_choices = 1;
        for (int i = 0; i < N; ++i) total_choices *= 3;
        for (std::int64_t c = 0; c < total_choices; ++c) {
            std::int64_t rem = c;
            double coef = 1.0, mu = 0.0;
            for (int i = 0; i < N; ++i) {
                const int d = int(rem % 3);
                rem /= 3;
                if (d == 1) { coef *= -0.5; mu += lams[i]; }
                if (d == 2) { coef *= -0.5; mu -= lams[i]; }
            }
            tot += coef * eng.avg(mu);
        }
        out.push_back(tot);
    }
    return out;
}

}  // namespace brlab
