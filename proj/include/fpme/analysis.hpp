#pragma once

#include <vector>

#include "fpme/evolve.hpp"
#include "fpme/profile.hpp"

namespace fpme {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
};

// Least squares of y against x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct TailFit {
    double r_lo = 0.0, r_hi = 0.0;
    double slope = 0.0;      // fitted -dlogF/dlogr (positive for decaying tails)
    double intercept = 0.0;  // log F at log r = 0
    double r2 = 0.0;         // goodness of the log-log line
    bool log_corrected = false;
    // Borderline-regime comparison on the compensated series J = F r^{N+2s}:
    // r2 of the power model vs the J = c log r + d model, both scored on J.
    double r2_power_J = 0.0;
    double r2_log_J = 0.0;
    double log_margin = 0.0;  // r2_log_J - r2_power_J
};

// Log-log tail fit over [r_lo, r_hi] (>= 8 shells required, WindowTooSmall
// otherwise). When p.m equals m_1 the log-corrected model is also fitted and
// reported.
TailFit fit_tail(const Profile& P, double r_lo, double r_hi);

struct ExpectedTail {
    double exponent;
    bool log_corrected;
};

// N+2s for m > m_1; 2s/(1-m) for m_c < m < m_1; log-corrected N+2s at m_1.
// RegimeError for m <= m_c.
ExpectedTail expected_tail(const Params& p);

struct ConvergenceSeries {
    std::vector<double> times;
    std::vector<double> values;     // t^alpha sup|u - u*|
    std::vector<double> l1_values;  // companion L1 metric (logged, not gating)
};

// Rescaled distance of run checkpoints from the self-similar reference.
// Throws MassMismatch when the run and reference masses differ by > 1e-4.
ConvergenceSeries convergence_to_barenblatt(const std::vector<Field>& checkpoints,
                                            const Profile& Fstar, const Params& p);

struct PotentialReport {
    double max_residual = 0.0;   // max over pairs of the relative defect
    double mono_violation = 0.0; // drift-corrected pointwise increase of U
    double tolerance = 0.0;
    bool pass = false;
    int pairs = 0;
};

// Discrete check of dU/dt = -u^m for the mean-zero-gauge potential
// U = (-Delta)^{-s} u across consecutive checkpoints. The comparison removes
// the spatial mean of u^m (the gauge drift) and reconstructs it for the
// pointwise monotonicity check.
PotentialReport potential_diagnostic(const std::vector<Field>& checkpoints, const Params& p,
                                     double tol);

struct ReflectionReport {
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Order preservation under reflection across the grid-aligned plane through
// x[plane_index] (axis 0). Requires the initial ordering (InputNotOrdered).
ReflectionReport reflection_check(const Field& u0, const Field& uT, int plane_index);

struct SigmaFit {
    double sigma_fit = 0.0;
    double sigma_theory = 0.0;
    double r2 = 0.0;
};

// Mass scaling law of the tail constant for m > m_1: fits log J(r*) against
// log M over a profile sweep. RegimeError for m <= m_1.
SigmaFit mass_exponent_sigma(const std::vector<Profile>& profiles, const Params& p,
                             double r_star);

}  // namespace fpme
