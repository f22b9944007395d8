#include "fpme/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fpme/errors.hpp"
#include "fpme/fraclap.hpp"
#include "fpme/gammafn.hpp"

namespace fpme {

namespace {

bool near_nonpositive_integer(double z) {
    return z <= 1e-14 && std::abs(z - std::round(z)) < 1e-14;
}

template <typename K, typename F>
double cached(std::map<K, double>& cache, std::mutex& mu, const K& key, F&& compute) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = compute();
    cache.emplace(key, v);
    return v;
}

}  // namespace

double sphere_surface(int N) {
    switch (N) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
    }
    return 2.0 * std::pow(M_PI, 0.5 * N) / gamma_fn(0.5 * N);
}

double riesz_gamma(double alpha, int N) {
    if (!(alpha > 0.0 && alpha < N))
        throw DomainError("riesz_gamma: alpha must lie in (0, N)");
    return std::pow(M_PI, 0.5 * N) * std::pow(2.0, alpha) * gamma_fn(0.5 * alpha) /
           gamma_fn(0.5 * (N - alpha));
}

double riesz_gamma_limit_ratio(int N) {
    return std::pow(M_PI, 0.5 * N) * std::pow(2.0, N - 1) * gamma_fn(0.5 * N);
}

double k_alpha(double alpha, double s, int N) {
    if (!(alpha > 0.0 && alpha < N))
        throw DomainError("k_alpha: alpha must lie in (0, N)");
    if (s == 1.0) return alpha * (N - alpha - 2.0);
    struct Factor {
        const char* name;
        double arg;
    };
    const Factor factors[4] = {{"Gamma((N-alpha)/2)", 0.5 * (N - alpha)},
                               {"Gamma((alpha+2s)/2)", 0.5 * (alpha + 2.0 * s)},
                               {"Gamma((N-alpha-2s)/2)", 0.5 * (N - alpha - 2.0 * s)},
                               {"Gamma(alpha/2)", 0.5 * alpha}};
    for (const Factor& f : factors)
        if (near_nonpositive_integer(f.arg))
            throw PoleError(std::string("k_alpha: pole in factor ") + f.name);
    return std::pow(2.0, 2.0 * s) * gamma_fn(factors[0].arg) * gamma_fn(factors[1].arg) /
           (gamma_fn(factors[2].arg) * gamma_fn(factors[3].arg));
}

VssConstant vss_constant(const Params& p) {
    const Regime reg = classify(p);
    if (!(p.m > reg.m_c && p.m < reg.m_1))
        throw RegimeError("vss_constant: requires m_c < m < m_1, got m=" + std::to_string(p.m));
    VssConstant v;
    v.alpha_vss = 2.0 * p.s * p.m / (1.0 - p.m);
    v.k_alpha = k_alpha(v.alpha_vss, p.s, p.N);
    const double c_pow = (1.0 - p.m) * (-v.k_alpha);
    if (!(c_pow > 0.0)) throw DomainError("vss_constant: (1-m)(-k) not positive");
    v.C = std::pow(c_pow, 1.0 / (1.0 - p.m));
    return v;
}

double cauchy_constant(int N) {
    static std::mutex mu;
    static std::map<int, double> cache;
    return cached(cache, mu, N, [&] {
        auto f = [&](double r) {
            return std::pow(r, N - 1) * std::pow(r * r + 1.0, -0.5 * (N + 1));
        };
        double I = integrate(f, 0.0, 64.0, 1e-14, 1e-13);
        // Tail via w = 1/r: integral_0^{1/64} (1+w^2)^{-(N+1)/2} dw.
        I += integrate([&](double w) { return std::pow(1.0 + w * w, -0.5 * (N + 1)); }, 0.0,
                       1.0 / 64.0, 1e-15, 1e-13);
        return 1.0 / (sphere_surface(N) * I);
    });
}

double cauchy_kernel(double x, double t, int N) {
    if (!(t > 0.0)) throw DomainError("cauchy_kernel: t must be positive");
    return cauchy_constant(N) * t * std::pow(x * x + t * t, -0.5 * (N + 1));
}

Field linear_kernel(const Grid& g, double t, double s, double tail_tol) {
    if (!(t > 0.0)) throw DomainError("linear_kernel: t must be positive");
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("linear_kernel: s must be in (0, 1]");
    Field K = field_from_radial_symbol(
        g, [&](double xi) { return std::exp(-std::pow(xi, 2.0 * s) * t); });
    K.time = t;
    const int N = g.dim;
    // Estimate the free-space tail mass beyond the box from the computed
    // kernel itself: median of K r^{N+2s} over an annulus well inside the box.
    std::vector<double> comp;
    const double lo = 0.55 * g.L, hi = 0.8 * g.L;
    if (N == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double r = std::abs(g.coord(i));
            if (r > lo && r < hi) comp.push_back(std::abs(K.at(i)) * std::pow(r, N + 2.0 * s));
        }
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                const double r = std::hypot(g.coord(i), g.coord(j));
                if (r > lo && r < hi)
                    comp.push_back(std::abs(K.at(i, j)) * std::pow(r, N + 2.0 * s));
            }
    }
    std::sort(comp.begin(), comp.end());
    const double c_tail = comp.empty() ? 0.0 : comp[comp.size() / 2];
    const double tail_mass = c_tail * sphere_surface(N) * std::pow(g.L, -2.0 * s) / (2.0 * s);
    if (tail_mass > tail_tol)
        throw BoxTooSmall("linear_kernel: estimated tail mass " + std::to_string(tail_mass) +
                          " beyond the box exceeds " + std::to_string(tail_tol));
    return K;
}

double riesz_kernel(double x, double s, int N) {
    if (!(2.0 * s < N))
        throw DimensionError("riesz_kernel: requires 2s < N (use the Bessel kernel otherwise)");
    if (x == 0.0) throw DomainError("riesz_kernel: x must be nonzero");
    return std::pow(std::abs(x), -(N - 2.0 * s)) / riesz_gamma(2.0 * s, N);
}

namespace {

double bump_normalization(int N) {
    static std::mutex mu;
    static std::map<int, double> cache;
    return cached(cache, mu, N, [&] {
        auto f = [&](double r) {
            return std::pow(r, N - 1) * std::exp(-1.0 / (1.0 - r * r));
        };
        return 1.0 / (sphere_surface(N) * integrate(f, 0.0, 1.0, 1e-14, 1e-12));
    });
}

// Shell integral S_N(r, R) = integral over |sigma|=1 of |R e1 - r sigma|^{-(N-2s)}.
double riesz_shell(double r, double R, double s, int N) {
    const double p = N - 2.0 * s;
    if (N == 1) return std::pow(std::abs(R - r), -p) + std::pow(R + r, -p);
    if (N == 3) {
        if (s == 0.5)
            return 2.0 * M_PI * std::log((R + r) / std::abs(R - r)) / (R * r);
        return 2.0 * M_PI *
               (std::pow(std::abs(R - r), 2.0 * s - 1.0) - std::pow(R + r, 2.0 * s - 1.0)) /
               (R * r * (1.0 - 2.0 * s));
    }
    auto f = [&](double th) {
        const double q2 = R * R + r * r - 2.0 * R * r * std::cos(th);
        return 2.0 * std::pow(q2, -0.5 * p);
    };
    return integrate(f, 0.0, M_PI, 1e-13, 1e-11);
}

}  // namespace

double mollifier_radial(double r, int N) {
    if (r >= 1.0) return 0.0;
    return bump_normalization(N) * std::exp(-1.0 / (1.0 - r * r));
}

double mollified_riesz(double x, double eps, double s, int N, const RealFn& mollifier) {
    if (!(2.0 * s < N)) throw DimensionError("mollified_riesz: requires 2s < N");
    if (!(eps > 0.0)) throw DomainError("mollified_riesz: eps must be positive");
    const double R = std::abs(x);
    RealFn rho = mollifier ? mollifier : RealFn([N](double r) { return mollifier_radial(r, N); });
    const double C1 = 1.0 / riesz_gamma(2.0 * s, N);
    auto f = [&](double r) {
        return rho(r / eps) * std::pow(r, N - 1) * riesz_shell(r, R, s, N) /
               std::pow(eps, N);
    };
    // Split at the shell singularity r = R when it falls inside the support;
    // the singularity is integrable and never lands on a quadrature node.
    std::vector<double> pts{0.0};
    if (R > 0.0 && R < eps) pts.push_back(R);
    pts.push_back(eps);
    double I = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        I += integrate(f, pts[i], pts[i + 1], 1e-12, 1e-9, 52);
    return C1 * I;
}

double mcdonald_K(double nu, double r) {
    if (!(r > 0.0)) throw DomainError("mcdonald_K: r must be positive");
    nu = std::abs(nu);  // K_{-nu} = K_nu
    // K_nu(r) = 2^{-1-nu} r^nu integral e^{-e^u - (r^2/4) e^{-u} - nu u} du.
    const double r2q = 0.25 * r * r;
    auto log_integrand = [&](double u) { return -std::exp(u) - r2q * std::exp(-u) - nu * u; };
    // Peak where e^u - r2q e^{-u} + nu = 0: quadratic in e^u.
    const double epeak = 0.5 * (-nu + std::sqrt(nu * nu + 4.0 * r2q));
    const double ustar = std::log(std::max(epeak, 1e-300));
    const double peak = log_integrand(ustar);
    double lo = ustar, hi = ustar;
    while (log_integrand(lo) > peak - 45.0) lo -= 0.5;
    while (log_integrand(hi) > peak - 45.0) hi += 0.5;
    const double h = 1.0 / 32.0;
    double sum = 0.0;
    for (double u = lo; u <= hi; u += h) sum += std::exp(log_integrand(u) - peak);
    const double I = sum * h * std::exp(peak);
    return std::pow(2.0, -1.0 - nu) * std::pow(r, nu) * I;
}

namespace {

double bessel_norm(double alpha, int N) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, double> cache;
    return cached(cache, mu, std::make_pair(alpha, N), [&] {
        const double nu = 0.5 * (N - alpha);
        auto f = [&](double r) {
            return std::pow(r, N - 1) * std::pow(r, 0.5 * (alpha - N)) * mcdonald_K(nu, r);
        };
        // Behaviour at 0: r^{N-1+(alpha-N)/2} K_nu ~ r^{min(alpha,N)-1} (log at alpha=N).
        double p = std::min(alpha, static_cast<double>(N)) - 1.0;
        if (alpha == N) p -= 0.1;  // absorb the logarithm
        double I = integrate_power_endpoint(f, 1.0, std::max(p, -0.95), 1e-12, 1e-10);
        I += integrate_decaying(f, 1.0, 4.0, 1e-13, 1e-11);
        return 1.0 / (sphere_surface(N) * I);
    });
}

}  // namespace

double bessel_G(double alpha, double x, int N) {
    if (!(alpha > 0.0)) throw DomainError("bessel_G: alpha must be positive");
    const double r = std::abs(x);
    if (r == 0.0) throw DomainError("bessel_G: x must be nonzero");
    return bessel_norm(alpha, N) * std::pow(r, 0.5 * (alpha - N)) *
           mcdonald_K(0.5 * (N - alpha), r);
}

Field mollifier_field(const Grid& g, double eps, double M) {
    if (!(eps > 0.0)) throw DomainError("mollifier_field: eps must be positive");
    Field u(g, 0.0);
    const int N = g.dim;
    if (N == 1) {
        for (int i = 0; i < g.n; ++i)
            u.at(i) = mollifier_radial(std::abs(g.coord(i)) / eps, N) / eps;
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                u.at(i, j) =
                    mollifier_radial(std::hypot(g.coord(i), g.coord(j)) / eps, N) / (eps * eps);
    }
    const double m0 = mass(u);
    if (!(m0 > 0.0)) throw ZeroMass("mollifier_field: mollifier unresolved on this grid");
    for (double& x : u.v) x *= M / m0;  // exact discrete mass M
    return u;
}

}  // namespace fpme
