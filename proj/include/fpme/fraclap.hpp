#pragma once

#include <functional>
#include <vector>

#include "fpme/fft.hpp"
#include "fpme/grid.hpp"

namespace fpme {

// Discrete fractional Laplacian on a periodic grid: diagonal in Fourier with
// multiplier |xi_k|^{2s}, xi_k = pi k / L per axis. The zero mode is
// annihilated exactly, so integral quantities are conserved by construction.
class SpectralOperator {
public:
    SpectralOperator(const Grid& g, double s);

    const Grid& grid() const { return grid_; }
    double order() const { return s_; }
    double max_multiplier() const { return max_mult_; }

    // (-Delta)^s u.
    void apply_into(const Field& u, Field& out, SpectralScratch& ws, bool dealias = false) const;

    // Mean-zero-gauge inverse: (-Delta)^s U = u - mean(u), zero mode of U = 0.
    void inverse_into(const Field& u, Field& out, SpectralScratch& ws) const;

    const std::vector<double>& multipliers() const { return mult_; }

private:
    Grid grid_;
    double s_;
    double max_mult_;
    std::vector<double> mult_;      // |xi|^{2s} on the half-complex layout
    std::vector<double> inv_mult_;  // |xi|^{-2s}, zero at the zero mode
    std::vector<double> mask_;      // 2/3-rule dealiasing mask
};

Field apply_fraclap(const SpectralOperator& op, const Field& u);
Field apply_inverse(const SpectralOperator& op, const Field& u);

// Samples of u(scale * x) on u's own grid, evaluated from the trigonometric
// interpolant (periodic extension outside the box).
Field resample_scaled(const Field& u, double scale);

// Spectral derivative along an axis (axis 0 in 1-D).
Field spectral_derivative(const Field& u, int axis = 0);

// Inverse transform of an analytic symbol: field with samples
// (1/(2L)^dim) sum_k symbol(|xi_k|) e^{i xi_k . x}. Unit discrete mass when
// symbol(0) = 1.
Field field_from_radial_symbol(const Grid& g, const std::function<double(double)>& symbol);

}  // namespace fpme
