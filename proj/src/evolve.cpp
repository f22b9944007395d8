#include "fpme/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fpme/errors.hpp"

namespace fpme {

Stepper::Stepper(const Grid& g, const Params& p, const SchemeConfig& cfg)
    : p_(p),
      cfg_(cfg),
      op_(g, p.s),
      op_half_(g, 0.5 * p.s),
      w_(g),
      k1_(g),
      mid_(g),
      k2_(g),
      dealias_(p.m != 1.0) {}

void Stepper::flux_into(const Field& u, Field& w) const {
    const double m = p_.m;
    w.grid = u.grid;
    w.time = u.time;
    w.v.resize(u.v.size());
    if (m == 1.0) {
        w.v = u.v;
    } else if (m == 2.0) {
        for (size_t i = 0; i < u.v.size(); ++i) {
            const double x = u.v[i];
            w.v[i] = x > 0.0 ? x * x : 0.0;
        }
    } else {
        for (size_t i = 0; i < u.v.size(); ++i) {
            const double x = u.v[i];
            w.v[i] = x > 0.0 ? std::pow(x, m) : 0.0;
        }
    }
}

void Stepper::rhs_into(const Field& w, Field& k) {
    op_.apply_into(w, k, ws_, dealias_);
    const double eps = cfg_.eps_absorption;
    if (eps > 0.0) {
        for (size_t i = 0; i < k.v.size(); ++i) k.v[i] = -k.v[i] - eps * w.v[i];
    } else {
        for (double& x : k.v) x = -x;
    }
}

double Stepper::stable_dt(const Field& u) const {
    const double m = p_.m;
    const double sup = sup_norm(u);
    if (sup == 0.0) return cfg_.t_end;
    double g;  // bound on u^{m-1} over the grid
    if (m >= 1.0) {
        g = std::pow(sup, m - 1.0);
    } else {
        double umin = std::numeric_limits<double>::infinity();
        for (double x : u.v)
            if (x > 0.0) umin = std::min(umin, x);
        g = std::isfinite(umin) ? std::min(std::pow(umin, m - 1.0), cfg_.floor_cap)
                                : cfg_.floor_cap;
    }
    const double rate = m * g * (op_.max_multiplier() + cfg_.eps_absorption);
    return 2.0 * cfg_.cfl_safety / rate;
}

void Stepper::step_into(const Field& u, double dt, Field& out) {
    flux_into(u, w_);
    rhs_into(w_, k1_);
    mid_.grid = u.grid;
    mid_.v.resize(u.v.size());
    const double half = 0.5 * dt;
    for (size_t i = 0; i < u.v.size(); ++i) mid_.v[i] = u.v[i] + half * k1_.v[i];
    flux_into(mid_, w_);
    rhs_into(w_, k2_);
    out.grid = u.grid;
    out.time = u.time + dt;
    out.v.resize(u.v.size());
    const double cell = u.grid.cell_volume();
    const double sup_before = sup_norm(u);
    double clip = 0.0;
    double sup_after = 0.0;
    for (size_t i = 0; i < u.v.size(); ++i) {
        double x = u.v[i] + dt * k2_.v[i];
        if (x < 0.0) {
            clip += -x;
            x = 0.0;
        }
        out.v[i] = x;
        sup_after = std::max(sup_after, x);
    }
    clipped_ += clip * cell;
    if (sup_after > cfg_.blowup_factor * sup_before + 1e-300)
        throw BlowUp("step: sup norm grew by more than " +
                     std::to_string((cfg_.blowup_factor - 1.0) * 100.0) + "% in one step");
}

double Stepper::energy(const Field& u) {
    flux_into(u, w_);
    op_half_.apply_into(w_, k1_, ws_, false);
    double s = 0.0;
    for (double x : k1_.v) s += x * x;
    return s * u.grid.cell_volume();
}

Field step(const Field& u, const SchemeConfig& cfg, const Params& p) {
    Stepper st(u.grid, p, cfg);
    double dt = st.stable_dt(u);
    if (cfg.adaptive) {
        if (cfg.dt_init > 0.0) dt = std::min(dt, cfg.dt_init);
    } else {
        if (!(cfg.dt_init > 0.0)) throw StabilityViolation("step: fixed mode needs dt_init > 0");
        if (cfg.dt_init > dt)
            throw StabilityViolation("step: dt_init exceeds the stability bound " +
                                     std::to_string(dt));
        dt = cfg.dt_init;
    }
    Field out;
    st.step_into(u, dt, out);
    return out;
}

namespace {

std::vector<double> checkpoint_times(double t_start, const SchemeConfig& cfg) {
    const double t0 = cfg.checkpoint_t0 > 0.0 ? cfg.checkpoint_t0 : cfg.t_end / 1000.0;
    std::vector<double> ts;
    for (double t = t0; t < cfg.t_end * (1.0 - 1e-12); t *= cfg.checkpoint_q)
        if (t > t_start) ts.push_back(t);
    ts.push_back(cfg.t_end);
    return ts;
}

}  // namespace

std::pair<Field, RunManifest> run(const Field& u0, const SchemeConfig& cfg, const Params& p) {
    RunManifest man;
    man.params = p;
    man.scheme = cfg;
    man.grid = u0.grid;
    Stepper st(u0.grid, p, cfg);

    Field u = u0;
    Field next(u0.grid);
    auto record = [&](const Field& f) {
        man.series.push_back({f.time, mass(f), sup_norm(f), st.energy(f), min_value(f)});
        if (cfg.store_checkpoints) man.checkpoints.push_back(f);
    };
    record(u);

    const double M = mass(u0);
    for (double tk : checkpoint_times(u0.time, cfg)) {
        while (u.time < tk * (1.0 - 1e-12)) {
            double dt = st.stable_dt(u);
            if (cfg.adaptive) {
                if (cfg.dt_init > 0.0) dt = std::min(dt, cfg.dt_init);
            } else {
                if (!(cfg.dt_init > 0.0))
                    throw StabilityViolation("run: fixed mode needs dt_init > 0");
                if (cfg.dt_init > dt) {
                    man.termination = "StabilityViolation";
                    throw StabilityViolation("run: dt_init exceeds the stability bound");
                }
                dt = cfg.dt_init;
            }
            dt = std::min(dt, tk - u.time);
            st.step_into(u, dt, next);
            std::swap(u, next);
            ++man.steps;
        }
        record(u);
        const double outside = mass_outside(u, 0.5 * u.grid.L);
        if (outside > cfg.box_tail_frac * M) {
            man.termination = "BoxTooSmall";
            throw BoxTooSmall("run: mass " + std::to_string(outside) + " beyond |x| > L/2 at t=" +
                              std::to_string(u.time) + " exceeds " +
                              std::to_string(cfg.box_tail_frac * M));
        }
    }
    man.clipped_mass = st.clipped_mass();
    man.termination = "completed";
    return {std::move(u), std::move(man)};
}

ComparisonReport comparison_check(const Field& u0, const Field& v0, const SchemeConfig& cfg,
                                  const Params& p) {
    if (u0.grid != v0.grid) throw GridMismatch("comparison_check: grids differ");
    const double scale = std::max(sup_norm(u0), sup_norm(v0));
    for (size_t i = 0; i < u0.v.size(); ++i)
        if (u0.v[i] > v0.v[i] + cfg.positivity_tol * scale)
            throw InputNotOrdered("comparison_check: u0 <= v0 fails at sample " +
                                  std::to_string(i));
    SchemeConfig c = cfg;
    c.store_checkpoints = true;
    auto [uT, mu] = run(u0, c, p);
    auto [vT, mv] = run(v0, c, p);
    ComparisonReport rep;
    rep.tolerance = cfg.positivity_tol * scale;
    for (size_t k = 0; k < std::min(mu.checkpoints.size(), mv.checkpoints.size()); ++k) {
        const Field& a = mu.checkpoints[k];
        const Field& b = mv.checkpoints[k];
        for (size_t i = 0; i < a.v.size(); ++i)
            rep.max_violation = std::max(rep.max_violation, a.v[i] - b.v[i]);
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    rep.pass = rep.max_violation <= rep.tolerance;
    return rep;
}

}  // namespace fpme
