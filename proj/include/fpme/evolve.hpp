#pragma once

#include <string>
#include <vector>

#include "fpme/fraclap.hpp"
#include "fpme/grid.hpp"
#include "fpme/params.hpp"

namespace fpme {

struct SchemeConfig {
    double dt_init = 0.0;       // > 0 caps the adaptive dt; the fixed dt when adaptive = false
    double cfl_safety = 0.9;    // fraction of the explicit-midpoint stability limit
    double t_end = 1.0;
    double eps_absorption = 0.0;
    bool adaptive = true;
    double mass_drift_tol = 1e-6;   // relative, whole run
    double positivity_tol = 1e-8;   // ringing tolerance relative to the sup norm
    double box_tail_frac = 1e-4;    // boundary-mass monitor: mass(|x| > L/2) < frac * M
    double checkpoint_q = 1.18920711500272107;  // 2^{1/4} geometric checkpoint ratio
    double checkpoint_t0 = 0.0;     // first checkpoint; 0 selects t_end/1000
    double blowup_factor = 1.10;
    double floor_cap = 1e6;         // cap on u^{m-1} in the stability bound for m < 1
    bool store_checkpoints = false;
};

struct DiagnosticsRow {
    double t, mass, supnorm, energy, minval;
};

// Provenance record of one run: parameters, scheme, diagnostics time series.
struct RunManifest {
    Params params;
    SchemeConfig scheme;
    Grid grid;
    std::vector<DiagnosticsRow> series;
    std::vector<Field> checkpoints;  // filled when scheme.store_checkpoints
    double clipped_mass = 0.0;
    long steps = 0;
    std::string termination;
};

// Explicit midpoint integrator for u_t = -(-Delta)^s(u^m) - eps u^m with
// reusable spectral workspace.
class Stepper {
public:
    Stepper(const Grid& g, const Params& p, const SchemeConfig& cfg);

    // Largest stable dt for the current field under the linearized bound.
    double stable_dt(const Field& u) const;

    // One midpoint step; clips negative undershoots and ledgers their mass.
    void step_into(const Field& u, double dt, Field& out);

    double clipped_mass() const { return clipped_; }
    const SpectralOperator& op() const { return op_; }

    // Energy integrand norm at the current state: L2 norm squared of
    // (-Delta)^{s/2} u^m.
    double energy(const Field& u);

private:
    void flux_into(const Field& u, Field& w) const;  // w = u^m (guarded at u <= 0)
    void rhs_into(const Field& w, Field& k);

    Params p_;
    SchemeConfig cfg_;
    SpectralOperator op_;
    SpectralOperator op_half_;
    SpectralScratch ws_;
    Field w_, k1_, mid_, k2_;
    double clipped_ = 0.0;
    bool dealias_;
};

// One explicit midpoint step with internally chosen dt.
Field step(const Field& u, const SchemeConfig& cfg, const Params& p);

// Integrate to t_end with adaptive dt and geometric checkpoints.
std::pair<Field, RunManifest> run(const Field& u0, const SchemeConfig& cfg, const Params& p);

struct ComparisonReport {
    double max_violation = 0.0;  // max over checkpoints of max(u - v, 0)
    double tolerance = 0.0;
    bool pass = false;
};

// Order preservation u0 <= v0 => u(t) <= v(t), checked at the checkpoints.
ComparisonReport comparison_check(const Field& u0, const Field& v0, const SchemeConfig& cfg,
                                  const Params& p);

}  // namespace fpme
