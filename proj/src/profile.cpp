#include "fpme/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fpme/errors.hpp"
#include "fpme/specfun.hpp"

namespace fpme {

std::string route_name(ProfileRoute r) {
    switch (r) {
        case ProfileRoute::Rescaled: return "rescaled";
        case ProfileRoute::Renormalized: return "renormalized";
        case ProfileRoute::Explicit: return "explicit";
    }
    return "?";
}

namespace {

constexpr double kLogFloor = -690.0;  // log of the smallest useful double

double safe_log(double x) { return x > 0.0 ? std::max(std::log(x), kLogFloor) : kLogFloor; }

// Fritsch-Carlson slopes for monotone cubic interpolation.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    std::vector<double> d(n, 0.0), h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    d[0] = ((2.0 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
    if (d[0] * delta[0] <= 0.0) d[0] = 0.0;
    else if (delta[0] * delta[1] <= 0.0 && std::abs(d[0]) > 3.0 * std::abs(delta[0]))
        d[0] = 3.0 * delta[0];
    const size_t m = n - 1;
    d[m] = ((2.0 * h[m - 1] + h[m - 2]) * delta[m - 1] - h[m - 1] * delta[m - 2]) /
           (h[m - 1] + h[m - 2]);
    if (d[m] * delta[m - 1] <= 0.0) d[m] = 0.0;
    else if (delta[m - 1] * delta[m - 2] <= 0.0 && std::abs(d[m]) > 3.0 * std::abs(delta[m - 1]))
        d[m] = 3.0 * delta[m - 1];
    return d;
}

}  // namespace

double profile_eval(const Profile& P, double r) {
    const auto& xs = P.r;
    const auto& Fs = P.F;
    if (xs.empty()) throw Error("profile_eval: empty profile");
    if (r <= xs.front()) return Fs.front();
    if (r >= xs.back()) {
        const double Fb = Fs.back();
        if (Fb <= 0.0) return 0.0;
        if (P.tail_p <= 0.0) return Fb;
        return Fb * std::pow(r / xs.back(), -P.tail_p);
    }
    // Locate the panel, interpolate log F monotonically.
    const auto it = std::upper_bound(xs.begin(), xs.end(), r);
    const size_t i = static_cast<size_t>(it - xs.begin()) - 1;
    static thread_local const double* cached_r = nullptr;
    static thread_local const double* cached_F = nullptr;
    static thread_local std::vector<double> ylog, slopes;
    if (cached_r != xs.data() || cached_F != Fs.data() || ylog.size() != xs.size()) {
        ylog.resize(xs.size());
        for (size_t j = 0; j < xs.size(); ++j) ylog[j] = safe_log(Fs[j]);
        slopes = pchip_slopes(xs, ylog);
        cached_r = xs.data();
        cached_F = Fs.data();
    }
    const double h = xs[i + 1] - xs[i];
    const double t = (r - xs[i]) / h;
    const double y0 = ylog[i], y1 = ylog[i + 1], d0 = slopes[i] * h, d1 = slopes[i + 1] * h;
    const double t2 = t * t, t3 = t2 * t;
    const double y = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
                     (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
    return y <= kLogFloor ? 0.0 : std::exp(y);
}

double profile_mass(const Profile& P) {
    const int N = P.params.N;
    const double w = sphere_surface(N);
    double I = 0.0;
    for (size_t i = 0; i + 1 < P.r.size(); ++i) {
        const double f0 = std::pow(P.r[i], N - 1) * P.F[i];
        const double f1 = std::pow(P.r[i + 1], N - 1) * P.F[i + 1];
        I += 0.5 * (f0 + f1) * (P.r[i + 1] - P.r[i]);
    }
    // Tail remainder from the fitted power (finite when tail_p > N).
    if (P.tail_p > N && P.F.back() > 0.0) {
        const double rb = P.r.back();
        I += P.F.back() * std::pow(rb, N) / (P.tail_p - N);
    }
    return w * I;
}

void fit_profile_tail(Profile& P) {
    const double rb = P.r.back();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < P.r.size(); ++i) {
        if (P.r[i] >= rb / 6.0 && P.r[i] <= rb && P.F[i] > 1e-250) {
            const double lx = std::log(P.r[i]), ly = std::log(P.F[i]);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
    }
    if (n < 4) {
        P.tail_c = 0.0;
        P.tail_p = 50.0;  // effectively truncate
        return;
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    P.tail_p = std::max(-slope, 0.0);
    P.tail_c = std::exp((sy - (-P.tail_p) * sx) / n);
}

Profile profile_mass_scaling(const Profile& F1, double M, const Params& p) {
    if (!(M > 0.0)) throw ZeroMass("profile_mass_scaling: M must be positive");
    const Exponents e = exponents(p);
    const double mu = std::pow(M / F1.M, e.beta);
    Profile out = F1;
    out.M = M;
    out.params.M = M;
    const double amp = std::pow(mu, 2.0 * p.s);
    const double arg = std::pow(mu, 1.0 - p.m);
    for (size_t i = 0; i < out.r.size(); ++i) out.F[i] = amp * profile_eval(F1, arg * out.r[i]);
    // The tail power is scale invariant; rescale its constant directly.
    out.tail_p = F1.tail_p;
    out.tail_c = F1.tail_c * amp * std::pow(arg, -F1.tail_p);
    return out;
}

Field field_from_profile(const Profile& P, const Grid& g, double t) {
    if (!(t > 0.0)) throw DomainError("field_from_profile: t must be positive");
    const Exponents e = exponents(P.params);
    const double amp = std::pow(t, -e.alpha);
    const double arg = std::pow(t, -e.beta);
    Field u(g, t);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
            u.at(i) = amp * profile_eval(P, std::abs(g.coord(i)) * arg);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                u.at(i, j) = amp * profile_eval(P, std::hypot(g.coord(i), g.coord(j)) * arg);
    }
    return u;
}

RadialAverage radial_average(const Field& u, double var_tol, double frac_floor) {
    const Grid& g = u.grid;
    const double dx = g.dx();
    const int nsh = g.n / 2 + 1;
    std::vector<double> sum(nsh, 0.0), sum2(nsh, 0.0);
    std::vector<int> cnt(nsh, 0);
    auto add = [&](double r, double val) {
        const int j = static_cast<int>(std::lround(r / dx));
        if (j < nsh) {
            sum[j] += val;
            sum2[j] += val * val;
            cnt[j] += 1;
        }
    };
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) add(std::abs(g.coord(i)), u.at(i));
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) add(std::hypot(g.coord(i), g.coord(j)), u.at(i, j));
    }
    RadialAverage out;
    double peak = 0.0;
    for (int j = 0; j < nsh; ++j)
        if (cnt[j] > 0) peak = std::max(peak, sum[j] / cnt[j]);
    for (int j = 0; j < nsh; ++j) {
        if (cnt[j] == 0) continue;
        const double mean = sum[j] / cnt[j];
        if (cnt[j] > 1 && mean > frac_floor * peak) {
            const double var = std::max(sum2[j] / cnt[j] - mean * mean, 0.0);
            if (std::sqrt(var) > var_tol * std::abs(mean))
                throw NotRadial("radial_average: shell spread " + std::to_string(std::sqrt(var) / mean) +
                                " at r=" + std::to_string(j * dx));
        }
        out.r.push_back(j * dx);
        out.value.push_back(mean);
    }
    return out;
}

void write_profile_csv(const Profile& P, std::ostream& out) {
    char buf[80];
    out << "r,F\n";
    for (size_t i = 0; i < P.r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", P.r[i], P.F[i]);
        out << buf;
    }
}

}  // namespace fpme
