#include "fpme/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "fpme/errors.hpp"

namespace fpme {

std::size_t spectrum_size(const Grid& g) {
    const std::size_t half = static_cast<std::size_t>(g.n / 2 + 1);
    return g.dim == 1 ? half : static_cast<std::size_t>(g.n) * half;
}

Fft::Fft(int dim, int n) : dim_(dim), n_(n) {
    const std::size_t nreal = dim == 1 ? n : static_cast<std::size_t>(n) * n;
    const std::size_t nspec = dim == 1 ? (n / 2 + 1) : static_cast<std::size_t>(n) * (n / 2 + 1);
    double* r = fftw_alloc_real(nreal);
    fftw_complex* c = fftw_alloc_complex(nspec);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (dim == 1) {
        fwd_ = fftw_plan_dft_r2c_1d(n, r, c, flags);
        bwd_ = fftw_plan_dft_c2r_1d(n, c, r, flags);
    } else {
        fwd_ = fftw_plan_dft_r2c_2d(n, n, r, c, flags);
        bwd_ = fftw_plan_dft_c2r_2d(n, n, c, r, flags);
    }
    fftw_free(r);
    fftw_free(c);
    if (!fwd_ || !bwd_) throw Error("fftw plan creation failed");
}

const Fft& Fft::plan(const Grid& g) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, Fft*> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.dim, g.n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, new Fft(g.dim, g.n)).first;
    return *it->second;
}

void Fft::forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void Fft::backward_destroys(std::complex<double>* spec, double* out) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(bwd_), reinterpret_cast<fftw_complex*>(spec),
                         out);
    const double scale = dim_ == 1 ? 1.0 / n_ : 1.0 / (static_cast<double>(n_) * n_);
    const std::size_t nreal = dim_ == 1 ? n_ : static_cast<std::size_t>(n_) * n_;
    for (std::size_t i = 0; i < nreal; ++i) out[i] *= scale;
}

void SpectralScratch::ensure(const Grid& g) {
    const std::size_t ns = spectrum_size(g);
    if (spec_a.size() < ns) spec_a.resize(ns);
    if (spec_b.size() < ns) spec_b.resize(ns);
    if (real_a.size() < g.size()) real_a.resize(g.size());
}

}  // namespace fpme
