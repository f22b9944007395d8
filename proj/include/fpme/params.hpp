#pragma once

#include <string>

#include "fpme/grid.hpp"

namespace fpme {

// Physical configuration: dimension N, fractional order s, nonlinearity
// exponent m, total mass M. s = 1 is admitted as a classical-limit oracle
// mode only; the spectral engine then uses the multiplier |xi|^2.
struct Params {
    int N = 1;
    double s = 0.5;
    double m = 1.0;
    double M = 1.0;

    Params() = default;
    Params(int N_, double s_, double m_, double M_ = 1.0);
};

struct Exponents {
    double alpha = 0.0;  // time-decay exponent
    double beta = 0.0;   // space-spread exponent
};

enum class RegimeTag {
    Subcritical,   // m <= m_c
    FastSingular,  // m_c < m < m_1
    Borderline,    // m == m_1
    FastRegular,   // m_1 < m < 1
    Linear,        // m == 1
    Slow,          // m > 1
};

struct Regime {
    double m_c = 0.0;
    double m_1 = 0.0;
    RegimeTag tag = RegimeTag::Linear;
};

std::string regime_name(RegimeTag tag);

double critical_m(int N, double s);    // m_c = max((N-2s)/N, 0)
double borderline_m(int N, double s);  // m_1 = N/(N+2s)

// alpha = N/(N(m-1)+2s), beta = 1/(N(m-1)+2s); alpha stored as N*beta so the
// identity alpha == N*beta holds bit-exactly. Throws DegenerateScaling when
// the shared denominator vanishes (m == m_c exactly).
Exponents exponents(const Params& p);

Regime classify(const Params& p);

// Mass-preserving scaling-group action: samples lambda^alpha u(lambda^beta x)
// (by trigonometric interpolation), time divided by lambda. Throws
// GridOverflow when the rescaled support would not fit the box.
Field rescale_solution(const Field& u, double lambda, const Params& p);

// Reduction to unit mass: values divided by M, time multiplied by M^{-(m-1)},
// Params.M set to 1. Throws ZeroMass when mass(u) <= 0.
std::pair<Field, Params> mass_normalize(const Field& u, const Params& p);

// Inverse of mass_normalize for round trips.
Field mass_denormalize(const Field& u, double M, const Params& p);

}  // namespace fpme
