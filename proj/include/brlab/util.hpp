#pragma once
// Small shared helpers: deterministic RNG wrappers, least-squares fits,
// CSV emission with stable formatting, misc numeric utilities.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace brlab {

using cplx = std::complex<double>;
inline constexpr double pi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// deterministic RNG: fixed engine + explicit seeds so that every experiment
// is byte-reproducible across runs and thread counts.
struct det_rng {
    std::mt19937_64 eng;
    explicit det_rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double a = 0.0, double b = 1.0) {
        // fixed 53-bit mapping, independent of library distribution quirks
        const std::uint64_t r = eng() >> 11;
        return a + (b - a) * (static_cast<double>(r) * 0x1.0p-53);
    }
    double normal() {
        // Box-Muller on the deterministic uniform stream
        double u1 = uniform(), u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }
};

// ---------------------------------------------------------------------------
// least-squares line fit y ~ a + b x, plus Pearson correlation.
struct line_fit {
    double intercept = 0.0, slope = 0.0, corr = 0.0;
};

inline line_fit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need matched arrays, size >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; syy += y[i] * y[i]; sxy += x[i] * y[i];
    }
    const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n,
                 cxy = sxy - sx * sy / n;
    line_fit out;
    out.slope = cxy / vx;
    out.intercept = (sy - out.slope * sx) / n;
    out.corr = (vy > 0) ? cxy / std::sqrt(vx * vy) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// CSV writer with fixed "%.17g" formatting (round-trip exact for doubles),
// so repeated runs produce byte-identical files.
class csv_writer {
  public:
    explicit csv_writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("csv_writer: cannot open " + path);
    }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out_ << (i ? "," : "") << cols[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& vals) {
        char buf[40];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", vals[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << "\n";
    }
  private:
    std::ofstream out_;
};

// ---------------------------------------------------------------------------
inline double sqr(double v) { return v * v; }

inline double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

// relative l2 distance between two complex fields
inline double rel_l2(std::span<const cplx> a, std::span<const cplx> b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

inline double max_abs(std::span<const cplx> a) {
    double m = 0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

inline std::vector<double> geomspace(double a, double b, int count) {
    std::vector<double> out(count);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < count; ++i)
        out[i] = std::exp(la + (lb - la) * i / double(count - 1));
    return out;
}

inline std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = a + (b - a) * i / double(count - 1);
    return out;
}

}  // namespace brlab
