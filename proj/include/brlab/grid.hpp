#pragma once
// Torus grid and discrete Fourier analysis.
//
// Model: the flat torus [-L/2, L/2)^Dim sampled at x_i = (i - N/2) L / N per
// axis.  Fourier coefficients use the analyst's normalization
//     fhat(k) = N^{-Dim} sum_i f(x_i) exp(-2 pi i k.x_i / L),
// with integer frequencies k in [-N/2, N/2).  The fast path delegates to
// FFTW (plan cache behind a mutex, estimate-mode plans, unaligned-safe), and
// a deliberately independent O(N^2) summation oracle is kept alongside for
// cross-checks.

#include <fftw3.h>

#include <array>
#include <map>
#include <mutex>
#include <vector>

#include "brlab/util.hpp"

namespace brlab {

// integer frequency of FFT bin i for axis length n: [0..n/2-1, -n/2..-1]
inline int freq_of(int i, int n) { return (i < n / 2) ? i : i - n; }
// FFT bin of integer frequency k in [-n/2, n/2)
inline int bin_of(int k, int n) { return (k >= 0) ? k : k + n; }

namespace detail {

// process-wide FFTW plan cache; FFTW planning is not thread-safe, execution
// with the new-array interface is.
class fftw_plan_cache {
  public:
    static fftw_plan_cache& instance() {
        static fftw_plan_cache c;
        return c;
    }
    fftw_plan get(const std::vector<int>& dims, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(dims, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t total = 1;
        for (int d : dims) total *= static_cast<std::size_t>(d);
        // dummy buffer just for planning; FFTW_UNALIGNED keeps the plan valid
        // for arbitrary caller buffers via fftw_execute_dft.
        std::vector<cplx> scratch(total);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()),
                                    dims.data(), ptr, ptr, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }
  private:
    fftw_plan_cache() = default;
    std::mutex mu_;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

inline void fftw_run(const std::vector<int>& dims, int sign, cplx* data) {
    fftw_plan p = fftw_plan_cache::instance().get(dims, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

}  // namespace detail

template <int Dim>
struct torus_grid {
    static_assert(Dim >= 1 && Dim <= 4, "supported ranks: 1..4");
    int n;         // samples per axis
    double len;    // period L per axis

    torus_grid(int n_, double len_) : n(n_), len(len_) {}

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < Dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }
    double coord(int i) const { return (i - n / 2) * len / n; }
    double cell_volume() const {
        double v = 1;
        for (int d = 0; d < Dim; ++d) v *= len / n;
        return v;
    }
    // largest |k| kept by the dealiasing convention for operator experiments
    double band_limit() const { return n / (4.0 * len); }

    std::array<int, Dim> unravel(std::size_t flat) const {
        std::array<int, Dim> idx{};
        for (int d = Dim - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(flat % n);
            flat /= n;
        }
        return idx;
    }
    std::size_t ravel(const std::array<int, Dim>& idx) const {
        std::size_t flat = 0;
        for (int d = 0; d < Dim; ++d)
            flat = flat * n + static_cast<std::size_t>((idx[d] % n + n) % n);
        return flat;
    }

    // sum over axes of (-1)^{index}: the phase twist translating between the
    // centered sample/frequency convention and FFTW's 0-based one.
    double twist(std::size_t flat) const {
        int parity = 0;
        for (int d = 0; d < Dim; ++d) {
            parity ^= static_cast<int>(flat % n) & 1;
            flat /= n;
        }
        return parity ? -1.0 : 1.0;
    }

    // forward transform: spatial samples -> coefficients (FFT bin layout)
    std::vector<cplx> dft(std::vector<cplx> f) const {
        // x_i = (i - n/2) L/n  =>  fhat(k) = (-1)^k FFT(f)[k] / N^Dim
        std::vector<int> dims(Dim, n);
        detail::fftw_run(dims, FFTW_FORWARD, f.data());
        const double scale = 1.0 / static_cast<double>(size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] *= scale * twist(i);
        return f;
    }

    // inverse transform: coefficients (FFT bin layout) -> spatial samples
    std::vector<cplx> idft(std::vector<cplx> fh) const {
        for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= twist(i);
        std::vector<int> dims(Dim, n);
        detail::fftw_run(dims, FFTW_BACKWARD, fh.data());
        return fh;
    }

    // independent O(N^2) summation oracle (no FFT machinery shared with the
    // fast path); used to cross-check dft / idft.
    std::vector<cplx> reference_dft(const std::vector<cplx>& f) const {
        const std::size_t total = size();
        std::vector<cplx> out(total, cplx{0.0, 0.0});
        for (std::size_t kf = 0; kf < total; ++kf) {
            const auto kidx = unravel(kf);
            cplx acc{0.0, 0.0};
            for (std::size_t xf = 0; xf < total; ++xf) {
                const auto xidx = unravel(xf);
                double phase = 0;
                for (int d = 0; d < Dim; ++d)
                    phase += freq_of(kidx[d], n) * coord(xidx[d]);
                acc += f[xf] * std::polar(1.0, -2.0 * pi * phase / len);
            }
            out[kf] = acc / static_cast<double>(total);
        }
        return out;
    }

    // Plancherel pairing: ||f||_{L^2(torus)} computed from samples
    double l2_norm(const std::vector<cplx>& f) const {
        double s = 0;
        for (const auto& v : f) s += std::norm(v);
        return std::sqrt(s * cell_volume());
    }
    // and the matching coefficient-side norm: ||f||_2 = L^{Dim/2} ||fhat||_2
    double coeff_l2_norm(const std::vector<cplx>& fh) const {
        double s = 0;
        for (const auto& v : fh) s += std::norm(v);
        return std::sqrt(s) * std::pow(len, Dim / 2.0);
    }
};

}  // namespace brlab
