#pragma once

#include "fpme/evolve.hpp"
#include "fpme/profile.hpp"

namespace fpme {

// Settings of the rescaled-variables flow v_tau = -(-Delta)^s(v^m) + beta div(y v).
struct RenormOptions {
    double tau_end = 60.0;
    double settle_tol = 1e-8;      // relative change per unit tau at which to stop
    double cfl_safety = 0.9;
    double taper_start = 0.8;      // cosine taper of the drift velocity beyond this * L
    double dt_cap = 0.0;
    int check_every = 25;
};

// Pseudo-time integrator for the rescaled equation. The drift y v uses
// physical-space centered differences with the velocity tapered to zero at the
// box edge, which keeps the divergence form (mass conserved to roundoff).
class RenormFlow {
public:
    RenormFlow(const Grid& g, const Params& p, const RenormOptions& opt = {});

    double stable_dt(const Field& v) const;
    void step_into(const Field& v, double dt, Field& out);

    // Iterate to a pseudo-steady state; throws NoConvergence past tau_end.
    Field run_to_steady(const Field& v0);

    double drift_leakage() const { return leakage_; }

private:
    void rhs_into(const Field& v, Field& k);

    Params p_;
    RenormOptions opt_;
    double beta_;
    SpectralOperator op_;
    SpectralScratch ws_;
    std::vector<double> vel_;  // tapered drift velocity per axis, flattened
    Field w_, k1_, mid_, k2_;
    double leakage_ = 0.0;
    bool dealias_;
};

// One step of the rescaled flow with an internally chosen dt.
Field renormalized_step(const Field& v, const SchemeConfig& cfg, const Params& p);

// Radial profile from a late-time field of a fundamental-solution run:
// F(r) = t^alpha * shell average at |x| = r t^beta.
Profile extract_profile(const Field& u, const Params& p);

struct SolveOptions {
    RenormOptions renorm;
    SchemeConfig scheme;        // used by the rescaled route
    double mollifier_eps = 0.0; // rescaled route initial data width; 0 = 4 dx
    double radial_var_tol = 1e-2;
};

// Barenblatt profile of mass M by either route.
Profile solve_profile(const Params& p, const Grid& g, ProfileRoute route, double M = 1.0,
                      const SolveOptions& opt = {});

// Sup over the trusted interior of |(-Delta)^s F^m - alpha F - beta y.grad F|,
// normalized by alpha F(0). alpha_scale perturbs alpha only (sensitivity
// controls in tests).
double profile_residual(const Profile& F, const Params& p, double alpha_scale = 1.0);

// Very singular solution C t^{1/(1-m)} |x|^{-2s/(1-m)}; exists for m_c < m < m_1.
double vss_field(double x, double t, const Params& p);

// Explicit eternal family for the classical operator (s = 1):
// (a x^2 + b e^{2 N a t})^{-N/2}. b = 0, x = 0 returns +infinity.
double eternal_profile_s1(double a, double b, double x, double t, int N);

}  // namespace fpme
