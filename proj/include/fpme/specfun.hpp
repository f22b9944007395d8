#pragma once

#include <functional>

#include "fpme/grid.hpp"
#include "fpme/params.hpp"
#include "fpme/quadrature.hpp"

namespace fpme {

// |S^{N-1}| for N in {1,2,3}.
double sphere_surface(int N);

// Riesz normalization gamma(alpha) = pi^{N/2} 2^alpha Gamma(alpha/2) / Gamma((N-alpha)/2),
// 0 < alpha < N. Throws DomainError outside.
double riesz_gamma(double alpha, int N);

// Limit of gamma(alpha)/(N-alpha) as alpha -> N: pi^{N/2} 2^{N-1} Gamma(N/2).
double riesz_gamma_limit_ratio(int N);

// k(alpha) with (-Delta)^s |x|^{-alpha} = k |x|^{-alpha-2s}:
// k = 2^{2s} Gamma((N-alpha)/2) Gamma((alpha+2s)/2) / (Gamma((N-alpha-2s)/2) Gamma(alpha/2)).
// s = 1 returns the classical value alpha(N-alpha-2). Throws PoleError naming
// the offending Gamma factor.
double k_alpha(double alpha, double s, int N);

struct VssConstant {
    double alpha_vss;  // 2sm/(1-m)
    double k_alpha;    // k at that exponent (negative on the validity window)
    double C;          // C^{1-m} = (1-m)(-k)
};

// Constant of the very singular solution; requires m_c < m < m_1.
VssConstant vss_constant(const Params& p);

// Explicit s = 1/2 kernel C_N t (x^2 + t^2)^{-(N+1)/2}, C_N fixed by unit mass.
double cauchy_kernel(double x, double t, int N);
double cauchy_constant(int N);

// Kernel of the linear semigroup on a periodic grid: inverse transform of
// e^{-|xi|^{2s} t}. Unit discrete mass exactly. Throws BoxTooSmall when the
// estimated free-space tail mass beyond the box exceeds tail_tol.
Field linear_kernel(const Grid& g, double t, double s, double tail_tol = 1e-6);

// Riesz kernel |x|^{-(N-2s)} / gamma(2s); requires 2s < N (DimensionError).
double riesz_kernel(double x, double s, int N);

// Radial unit-mass mollifier exp(-1/(1-|x|^2)) on the unit ball of R^N.
double mollifier_radial(double r, int N);

// Smoothed Riesz kernel V_eps = rho_eps * V by quadrature over the mollifier
// shells. `mollifier` is a radial profile on [0,1); nullptr selects the
// standard bump. Requires 2s < N.
double mollified_riesz(double x, double eps, double s, int N,
                       const RealFn& mollifier = nullptr);

// McDonald function (modified Bessel of the second kind) via the exponential
// integral representation; symmetric in nu.
double mcdonald_K(double nu, double r);

// Bessel kernel G_alpha(x) = c(alpha,N) |x|^{(alpha-N)/2} K_{(N-alpha)/2}(|x|),
// c fixed by unit mass.
double bessel_G(double alpha, double x, int N);

// Field holding M * rho_eps centered at the origin, renormalized so the
// discrete mass is exactly M.
Field mollifier_field(const Grid& g, double eps, double M);

}  // namespace fpme
