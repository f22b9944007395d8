#include "fpme/selfsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fpme/errors.hpp"
#include "fpme/specfun.hpp"

namespace fpme {

namespace {

double cosine_taper(double rho, double start, double L) {
    if (rho <= start) return 1.0;
    if (rho >= L) return 0.0;
    const double t = (rho - start) / (L - start);
    const double c = std::cos(0.5 * M_PI * t);
    return c * c;
}

// Tail exponent of the profile in each regime (N+2s above m_1, 2s/(1-m) below).
double expected_tail_exponent(const Params& p) {
    const double m1 = borderline_m(p.N, p.s);
    if (p.m >= m1) return p.N + 2.0 * p.s;
    return 2.0 * p.s / (1.0 - p.m);
}

double guarded_pow(double x, double m) {
    if (m == 1.0) return x;
    return x > 0.0 ? std::pow(x, m) : 0.0;
}

}  // namespace

RenormFlow::RenormFlow(const Grid& g, const Params& p, const RenormOptions& opt)
    : p_(p),
      opt_(opt),
      beta_(exponents(p).beta),
      op_(g, p.s),
      w_(g),
      k1_(g),
      mid_(g),
      k2_(g),
      dealias_(p.m != 1.0) {
    // Tapered drift velocity beta * y * T(|y|) per axis point.
    const double start = opt_.taper_start * g.L;
    vel_.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        const double y = g.coord(i);
        vel_[i] = beta_ * y * cosine_taper(std::abs(y), start, g.L);
    }
}

void RenormFlow::rhs_into(const Field& v, Field& k) {
    const Grid& g = v.grid;
    // w = v^m
    w_.grid = g;
    w_.v.resize(v.v.size());
    const double m = p_.m;
    for (size_t i = 0; i < v.v.size(); ++i) w_.v[i] = guarded_pow(v.v[i], m);
    op_.apply_into(w_, k, ws_, dealias_);
    for (double& x : k.v) x = -x;
    // + centered divergence of (vel * v), periodic indexing.
    const int n = g.n;
    const double inv2dx = 1.0 / (2.0 * g.dx());
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1) % n, im = (i + n - 1) % n;
            k.at(i) += (vel_[ip] * v.at(ip) - vel_[im] * v.at(im)) * inv2dx;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1) % n, im = (i + n - 1) % n;
            for (int j = 0; j < n; ++j) {
                const int jp = (j + 1) % n, jm = (j + n - 1) % n;
                double d = (vel_[ip] * v.at(ip, j) - vel_[im] * v.at(im, j)) * inv2dx;
                d += (vel_[jp] * v.at(i, jp) - vel_[jm] * v.at(i, jm)) * inv2dx;
                k.at(i, j) += d;
            }
        }
    }
}

double RenormFlow::stable_dt(const Field& v) const {
    const double m = p_.m;
    const double sup = sup_norm(v);
    if (sup == 0.0) return 1.0;
    double g;
    if (m >= 1.0) {
        g = std::pow(sup, m - 1.0);
    } else {
        double vmin = std::numeric_limits<double>::infinity();
        for (double x : v.v)
            if (x > 0.0) vmin = std::min(vmin, x);
        g = std::isfinite(vmin) ? std::min(std::pow(vmin, m - 1.0), 1e6) : 1e6;
    }
    const double diff_rate = m * g * op_.max_multiplier();
    double vmax = 0.0;
    for (double x : vel_) vmax = std::max(vmax, std::abs(x));
    const double adv_rate = vmax / v.grid.dx() + std::abs(beta_) * p_.N;
    double dt = 2.0 * opt_.cfl_safety / (diff_rate + adv_rate);
    if (opt_.dt_cap > 0.0) dt = std::min(dt, opt_.dt_cap);
    return dt;
}

void RenormFlow::step_into(const Field& v, double dt, Field& out) {
    rhs_into(v, k1_);
    mid_.grid = v.grid;
    mid_.v.resize(v.v.size());
    for (size_t i = 0; i < v.v.size(); ++i) mid_.v[i] = v.v[i] + 0.5 * dt * k1_.v[i];
    rhs_into(mid_, k2_);
    out.grid = v.grid;
    out.time = v.time + dt;
    out.v.resize(v.v.size());
    const double m_before = mass(v);
    for (size_t i = 0; i < v.v.size(); ++i) {
        double x = v.v[i] + dt * k2_.v[i];
        out.v[i] = x < 0.0 ? 0.0 : x;
    }
    leakage_ += std::abs(mass(out) - m_before);
}

Field RenormFlow::run_to_steady(const Field& v0) {
    Field v = v0;
    Field next(v0.grid);
    double tau = 0.0;
    long it = 0;
    while (tau < opt_.tau_end) {
        const double dt = stable_dt(v);
        step_into(v, dt, next);
        tau += dt;
        ++it;
        if (it % opt_.check_every == 0) {
            const double rate = sup_distance(next, v) / (dt * std::max(sup_norm(v), 1e-300));
            if (rate < opt_.settle_tol) return next;
        }
        std::swap(v, next);
    }
    throw NoConvergence("renormalized flow: no steady state by tau=" +
                        std::to_string(opt_.tau_end));
}

Field renormalized_step(const Field& v, const SchemeConfig& cfg, const Params& p) {
    RenormOptions opt;
    opt.cfl_safety = cfg.cfl_safety;
    RenormFlow flow(v.grid, p, opt);
    double dt = flow.stable_dt(v);
    if (cfg.dt_init > 0.0) {
        if (!cfg.adaptive && cfg.dt_init > dt)
            throw StabilityViolation("renormalized_step: dt_init exceeds the stability bound");
        dt = std::min(dt, cfg.dt_init);
    }
    Field out;
    flow.step_into(v, dt, out);
    return out;
}

Profile extract_profile(const Field& u, const Params& p) {
    if (!(u.time > 0.0)) throw DomainError("extract_profile: field time must be positive");
    const Exponents e = exponents(p);
    const RadialAverage ra = radial_average(u);
    Profile P;
    P.params = p;
    P.route = ProfileRoute::Rescaled;
    const double ta = std::pow(u.time, e.alpha);
    const double tb = std::pow(u.time, -e.beta);
    P.r.reserve(ra.r.size());
    P.F.reserve(ra.r.size());
    for (size_t i = 0; i < ra.r.size(); ++i) {
        P.r.push_back(ra.r[i] * tb);
        P.F.push_back(ta * ra.value[i]);
    }
    fit_profile_tail(P);
    P.M = profile_mass(P);
    return P;
}

Profile solve_profile(const Params& p, const Grid& g, ProfileRoute route, double M,
                      const SolveOptions& opt) {
    const Regime reg = classify(p);
    if (!(p.m > reg.m_c))
        throw RegimeError("solve_profile: no fundamental solution for m <= m_c");

    if (route == ProfileRoute::Renormalized) {
        // Start from a generalized Cauchy bump that already carries the
        // expected tail power, so the flow only reshapes core and constant.
        const double q = expected_tail_exponent(p);
        const Exponents e = exponents(p);
        const double a = std::max(std::pow(M, e.beta * (p.m - 1.0)), 4.0 * g.dx());
        Field v(g, 0.0);
        if (g.dim == 1) {
            for (int i = 0; i < g.n; ++i) {
                const double r = g.coord(i) / a;
                v.at(i) = std::pow(1.0 + r * r, -0.5 * q);
            }
        } else {
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j) {
                    const double r = std::hypot(g.coord(i), g.coord(j)) / a;
                    v.at(i, j) = std::pow(1.0 + r * r, -0.5 * q);
                }
        }
        const double m0 = mass(v);
        for (double& x : v.v) x *= M / m0;
        RenormFlow flow(g, p, opt.renorm);
        Field steady = flow.run_to_steady(v);
        steady.time = 1.0;  // the steady state is the profile at unit rescaled time
        const RadialAverage ra = radial_average(steady, opt.radial_var_tol);
        Profile P;
        P.params = p;
        P.route = ProfileRoute::Renormalized;
        P.r = ra.r;
        P.F = ra.value;
        fit_profile_tail(P);
        P.M = profile_mass(P);
        return profile_mass_scaling(P, M, p);
    }

    // Rescaled route: evolve mollified point data, then unscale a late field.
    SchemeConfig cfg = opt.scheme;
    const double eps = opt.mollifier_eps > 0.0 ? opt.mollifier_eps : 4.0 * g.dx();
    Field u0 = mollifier_field(g, eps, M);
    auto result = run(u0, cfg, p);
    Profile P = extract_profile(result.first, p);
    return profile_mass_scaling(P, M, p);
}

double profile_residual(const Profile& F, const Params& p, double alpha_scale) {
    if (p.N > 2) throw DimensionError("profile_residual: grids support N <= 2");
    const Exponents e = exponents(p);
    const int n = 2048;
    const double L = F.r.back();
    const Grid g(p.N == 2 ? 2 : 1, p.N == 2 ? 512 : n, L);
    Field u(g, 1.0);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) u.at(i) = profile_eval(F, std::abs(g.coord(i)));
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                u.at(i, j) = profile_eval(F, std::hypot(g.coord(i), g.coord(j)));
    }
    Field w(g, 1.0);
    for (size_t i = 0; i < u.v.size(); ++i) w.v[i] = guarded_pow(u.v[i], p.m);
    SpectralOperator op(g, p.s);
    Field lhs = apply_fraclap(op, w);
    // alpha F + beta y . grad F with centered differences.
    const double inv2dx = 1.0 / (2.0 * g.dx());
    const double F0 = F.center();
    double worst = 0.0;
    if (g.dim == 1) {
        for (int i = 1; i + 1 < g.n; ++i) {
            const double y = g.coord(i);
            if (std::abs(y) > 0.5 * L || u.at(i) < 1e-6 * F0) continue;
            const double drift = e.beta * y * (u.at(i + 1) - u.at(i - 1)) * inv2dx;
            const double resid = lhs.at(i) - alpha_scale * e.alpha * u.at(i) - drift;
            worst = std::max(worst, std::abs(resid));
        }
    } else {
        for (int i = 1; i + 1 < g.n; ++i)
            for (int j = 1; j + 1 < g.n; ++j) {
                const double y1 = g.coord(i), y2 = g.coord(j);
                if (std::hypot(y1, y2) > 0.5 * L || u.at(i, j) < 1e-6 * F0) continue;
                double drift = e.beta * y1 * (u.at(i + 1, j) - u.at(i - 1, j)) * inv2dx;
                drift += e.beta * y2 * (u.at(i, j + 1) - u.at(i, j - 1)) * inv2dx;
                const double resid = lhs.at(i, j) - alpha_scale * e.alpha * u.at(i, j) - drift;
                worst = std::max(worst, std::abs(resid));
            }
    }
    return worst / (e.alpha * F0);
}

double vss_field(double x, double t, const Params& p) {
    const Regime reg = classify(p);
    if (!(p.m > reg.m_c && p.m < reg.m_1))
        throw RegimeError("vss_field: very singular solution exists only for m_c < m < m_1");
    if (x == 0.0) throw DomainError("vss_field: x must be nonzero");
    if (t == 0.0) return 0.0;
    const VssConstant v = vss_constant(p);
    return v.C * std::pow(t, 1.0 / (1.0 - p.m)) *
           std::pow(std::abs(x), -2.0 * p.s / (1.0 - p.m));
}

double eternal_profile_s1(double a, double b, double x, double t, int N) {
    if (!(a > 0.0) || b < 0.0) throw DomainError("eternal_profile_s1: need a > 0, b >= 0");
    const double base = a * x * x + b * std::exp(2.0 * N * a * t);
    if (base == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(base, -0.5 * N);
}

}  // namespace fpme
