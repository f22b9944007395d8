#pragma once

#include "fpme/quadrature.hpp"

namespace fpme {

struct OracleOptions {
    double r_cut = 1e4;    // numeric integration range (relative to |x0|)
    double tol = 1e-10;    // internal quadrature target per piece
    double period = 0.0;   // > 0: subtract periodic images with this spatial period (1-D only)
    int images = 6;        // image pairs summed when period > 0
};

// Principal-value evaluation of (-Delta)^s f at radius x0 > 0 for radial f
// on R^N, N in {1,2,3}. The integral over R^N is reduced to a radial one and
// folded about the singular radius, which removes the principal-value
// cancellation analytically; the far field beyond r_cut uses fitted power
// tails. Throws SlowDecay when the tail fit finds no decay.
double fraclap_quadrature_oracle(const RealFn& f_radial, double x0, double s, int N,
                                 const OracleOptions& opt = {});

// Normalization constant C(N,s) of the singular-integral form, calibrated
// numerically against the Fourier symbol (sine eigenfunctions in 1-D, the
// Gaussian at the origin otherwise). Cached per (N, s).
double fraclap_pv_constant(int N, double s);

// Closed form 4^s Gamma(N/2+s) s / (pi^{N/2} Gamma(1-s)) for cross-checks.
double fraclap_pv_constant_closed_form(int N, double s);

}  // namespace fpme
