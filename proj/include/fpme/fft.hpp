#pragma once

#include <complex>
#include <vector>

#include "fpme/grid.hpp"

namespace fpme {

// Number of coefficients in the half-complex spectrum of a real field:
// n/2+1 in 1-D, n*(n/2+1) in 2-D (last axis halved).
std::size_t spectrum_size(const Grid& g);

// Cached FFTW real<->half-complex transforms per (dim, n). Plans are created
// with FFTW_ESTIMATE (deterministic) and may be executed concurrently on
// distinct arrays.
class Fft {
public:
    static const Fft& plan(const Grid& g);

    // Unnormalized DFT sum of the samples.
    void forward(const double* in, std::complex<double>* out) const;

    // Inverse including the 1/n^dim factor. Clobbers `spec`.
    void backward_destroys(std::complex<double>* spec, double* out) const;

    int dim() const { return dim_; }
    int n() const { return n_; }

private:
    Fft(int dim, int n);
    int dim_, n_;
    void* fwd_;  // fftw_plan
    void* bwd_;
};

// Reusable buffers so stepping loops do not allocate.
struct SpectralScratch {
    std::vector<std::complex<double>> spec_a, spec_b;
    std::vector<double> real_a;
    void ensure(const Grid& g);
};

}  // namespace fpme
