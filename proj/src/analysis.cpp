#include "fpme/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpme/errors.hpp"

namespace fpme {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit f;
    f.points = static_cast<int>(x.size());
    if (x.size() != y.size() || x.size() < 2) throw Error("fit_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / n;
    f.r2 = vy > 0.0 ? std::min(cxy * cxy / (vx * vy), 1.0) : 1.0;
    return f;
}

namespace {

double r2_of_prediction(const std::vector<double>& y, const std::vector<double>& yhat) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= y.size();
    double ss_tot = 0.0, ss_res = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
        ss_tot += (y[i] - mean) * (y[i] - mean);
        ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    }
    return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

}  // namespace

TailFit fit_tail(const Profile& P, double r_lo, double r_hi) {
    if (!(r_lo > 0.0 && r_hi > r_lo)) throw WindowTooSmall("fit_tail: bad window");
    std::vector<double> lr, lf, rr, Fv;
    for (size_t i = 0; i < P.r.size(); ++i) {
        if (P.r[i] >= r_lo && P.r[i] <= r_hi && P.F[i] > 0.0) {
            lr.push_back(std::log(P.r[i]));
            lf.push_back(std::log(P.F[i]));
            rr.push_back(P.r[i]);
            Fv.push_back(P.F[i]);
        }
    }
    if (lr.size() < 8) throw WindowTooSmall("fit_tail: fewer than 8 shells in the window");
    TailFit t;
    t.r_lo = r_lo;
    t.r_hi = r_hi;
    const LineFit line = fit_line(lr, lf);
    t.slope = -line.slope;
    t.intercept = line.intercept;
    t.r2 = line.r2;

    const Regime reg = classify(P.params);
    if (reg.tag == RegimeTag::Borderline) {
        // Compensated series J = F r^{N+2s}; exact power tails make J itself a
        // power while the borderline profile makes it c log r + d.
        const double q = P.params.N + 2.0 * P.params.s;
        std::vector<double> J(rr.size()), logJ(rr.size());
        for (size_t i = 0; i < rr.size(); ++i) {
            J[i] = Fv[i] * std::pow(rr[i], q);
            logJ[i] = std::log(J[i]);
        }
        const LineFit pw = fit_line(lr, logJ);
        std::vector<double> pred_pw(rr.size());
        for (size_t i = 0; i < rr.size(); ++i)
            pred_pw[i] = std::exp(pw.intercept + pw.slope * lr[i]);
        const LineFit lg = fit_line(lr, J);  // J = c log r + d
        std::vector<double> pred_lg(rr.size());
        for (size_t i = 0; i < rr.size(); ++i) pred_lg[i] = lg.intercept + lg.slope * lr[i];
        t.r2_power_J = r2_of_prediction(J, pred_pw);
        t.r2_log_J = r2_of_prediction(J, pred_lg);
        t.log_margin = t.r2_log_J - t.r2_power_J;
        t.log_corrected = t.log_margin > 0.0;
    }
    return t;
}

ExpectedTail expected_tail(const Params& p) {
    const Regime reg = classify(p);
    if (p.m <= reg.m_c)
        throw RegimeError("expected_tail: no fundamental solution for m <= m_c");
    if (reg.tag == RegimeTag::Borderline) return {p.N + 2.0 * p.s, true};
    if (p.m < reg.m_1) return {2.0 * p.s / (1.0 - p.m), false};
    return {p.N + 2.0 * p.s, false};
}

ConvergenceSeries convergence_to_barenblatt(const std::vector<Field>& checkpoints,
                                            const Profile& Fstar, const Params& p) {
    if (checkpoints.empty()) throw Error("convergence_to_barenblatt: no checkpoints");
    const double m_run = mass(checkpoints.front());
    const double m_ref = Fstar.M;
    if (std::abs(m_run - m_ref) > 1e-4 * std::max(m_ref, 1e-300))
        throw MassMismatch("convergence_to_barenblatt: run mass " + std::to_string(m_run) +
                           " vs reference " + std::to_string(m_ref));
    const Exponents e = exponents(p);
    ConvergenceSeries out;
    for (const Field& u : checkpoints) {
        if (!(u.time > 0.0)) continue;
        const Field ref = field_from_profile(Fstar, u.grid, u.time);
        const double ta = std::pow(u.time, e.alpha);
        out.times.push_back(u.time);
        out.values.push_back(ta * sup_distance(u, ref));
        out.l1_values.push_back(l1_distance(u, ref));
    }
    return out;
}

PotentialReport potential_diagnostic(const std::vector<Field>& checkpoints, const Params& p,
                                     double tol) {
    if (checkpoints.size() < 2) throw Error("potential_diagnostic: need >= 2 checkpoints");
    const Grid& g = checkpoints.front().grid;
    SpectralOperator op(g, p.s);
    SpectralScratch ws;
    PotentialReport rep;
    rep.tolerance = tol;
    Field Ua, Ub, wm(g);
    op.inverse_into(checkpoints[0], Ua, ws);
    for (size_t k = 0; k + 1 < checkpoints.size(); ++k) {
        const Field& u0 = checkpoints[k];
        const Field& u1 = checkpoints[k + 1];
        op.inverse_into(u1, Ub, ws);
        const double dt = u1.time - u0.time;
        // Midpoint flux, de-meaned (the mean is the gauge drift).
        double mean_w = 0.0;
        for (size_t i = 0; i < u0.v.size(); ++i) {
            const double um = 0.5 * (u0.v[i] + u1.v[i]);
            wm.v[i] = um > 0.0 ? std::pow(um, p.m) : 0.0;
            mean_w += wm.v[i];
        }
        mean_w /= static_cast<double>(wm.v.size());
        double num = 0.0, den = 0.0, mono = 0.0;
        for (size_t i = 0; i < u0.v.size(); ++i) {
            const double dudt = (Ub.v[i] - Ua.v[i]) / dt;
            num += std::abs(dudt + (wm.v[i] - mean_w));
            den += std::abs(wm.v[i]);
            // Gauge-reconstructed potential decreases: dU/dt + mean <= 0.
            mono = std::max(mono, dudt + mean_w);
        }
        rep.max_residual = std::max(rep.max_residual, num / den);
        rep.mono_violation = std::max(rep.mono_violation, mono * dt);
        std::swap(Ua, Ub);
        ++rep.pairs;
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

ReflectionReport reflection_check(const Field& u0, const Field& uT, int plane_index) {
    const Grid& g = u0.grid;
    if (g.dim != 1) throw GridMismatch("reflection_check: 1-D fields only");
    if (uT.grid != g) throw GridMismatch("reflection_check: fields on different grids");
    const int n = g.n;
    auto mirror = [&](int i) { return ((2 * plane_index - i) % n + n) % n; };
    const double tol0 = 1e-12 * std::max(sup_norm(u0), 1e-300);
    for (int d = 1; d < n / 2; ++d) {
        const int i = (plane_index + d) % n;
        if (u0.at(i) < u0.at(mirror(i)) - tol0)
            throw InputNotOrdered("reflection_check: u0 not ordered across the plane");
    }
    ReflectionReport rep;
    rep.tolerance = 1e-8 * std::max(sup_norm(uT), 1e-300);
    for (int d = 1; d < n / 2; ++d) {
        const int i = (plane_index + d) % n;
        rep.max_violation = std::max(rep.max_violation, uT.at(mirror(i)) - uT.at(i));
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    rep.pass = rep.max_violation <= rep.tolerance;
    return rep;
}

SigmaFit mass_exponent_sigma(const std::vector<Profile>& profiles, const Params& p,
                             double r_star) {
    const Regime reg = classify(p);
    if (!(p.m > reg.m_1))
        throw RegimeError("mass_exponent_sigma: tail constant is mass independent for m <= m_1");
    if (profiles.size() < 3) throw Error("mass_exponent_sigma: need >= 3 masses");
    const double q = p.N + 2.0 * p.s;
    std::vector<double> lM, lJ;
    for (const Profile& P : profiles) {
        lM.push_back(std::log(P.M));
        lJ.push_back(std::log(profile_eval(P, r_star) * std::pow(r_star, q)));
    }
    const LineFit line = fit_line(lM, lJ);
    SigmaFit s;
    s.sigma_fit = line.slope;
    s.r2 = line.r2;
    s.sigma_theory = (p.m - reg.m_1) * q * exponents(p).beta;
    return s;
}

}  // namespace fpme
