#pragma once

#include <string>
#include <vector>

#include "fpme/grid.hpp"
#include "fpme/params.hpp"

namespace fpme {

enum class ProfileRoute { Rescaled, Renormalized, Explicit };

std::string route_name(ProfileRoute r);

// Radial samples F(r_i) of a self-similar profile. Nonincreasing, F(0) = max.
// Beyond r.back() evaluation falls back to the fitted power tail.
struct Profile {
    std::vector<double> r;  // increasing, r[0] == 0 when the center is sampled
    std::vector<double> F;
    double M = 1.0;
    Params params;
    ProfileRoute route = ProfileRoute::Explicit;
    double tail_c = 0.0;  // F ~ tail_c r^{-tail_p} for r > r.back()
    double tail_p = 0.0;

    double center() const { return F.empty() ? 0.0 : F.front(); }
};

// Monotone cubic interpolation of log F on the sample range, anchored power
// law beyond it.
double profile_eval(const Profile& P, double r);

// Shell quadrature of the samples plus the analytic tail remainder.
double profile_mass(const Profile& P);

// Least-squares power fit over the outer sample decade; sets tail_c, tail_p.
void fit_profile_tail(Profile& P);

// Scaling-group action on profiles: F_M(r) = mu^{2s} F1(mu^{1-m} r) with
// mu = (M/M1)^beta. Samples stay on F1's radial grid; out-of-range arguments
// use the fitted tail power.
Profile profile_mass_scaling(const Profile& F1, double M, const Params& p);

// Self-similar reconstruction u(x) = t^{-alpha} F(|x| t^{-beta}) on a grid.
Field field_from_profile(const Profile& P, const Grid& g, double t);

// Shell averages of a field. Throws NotRadial when the relative shell spread
// exceeds var_tol on shells carrying at least frac_floor of the peak.
struct RadialAverage {
    std::vector<double> r;
    std::vector<double> value;
};
RadialAverage radial_average(const Field& u, double var_tol = 1e-2,
                             double frac_floor = 1e-3);

void write_profile_csv(const Profile& P, std::ostream& out);

}  // namespace fpme
