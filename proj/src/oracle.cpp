#include "fpme/oracle.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "fpme/errors.hpp"
#include "fpme/gammafn.hpp"

namespace fpme {

namespace {

double sphere_area(int N) {  // |S^{N-1}|
    if (N == 1) return 2.0;
    if (N == 2) return 2.0 * M_PI;
    return 4.0 * M_PI;
}

// A_N(1+h) = integral over the unit sphere of |e1 - (1+h) sigma|^{-(N+2s)},
// written in h = r - 1 so the h -> 0 singularity keeps full precision.
// Closed forms for N = 1, 3; adaptive quadrature for N = 2.
double angular_kernel(double h, double s, int N, double tol) {
    const double p = N + 2.0 * s;
    if (N == 1) return std::pow(h, -p) + std::pow(2.0 + h, -p);
    if (N == 3) {
        const double q = 1.0 + 2.0 * s;
        return 2.0 * M_PI * (std::pow(h, -q) - std::pow(2.0 + h, -q)) / (q * (1.0 + h));
    }
    // N = 2: peak of width h at theta = 0; |e1 - r sigma|^2 = h^2 + 4r sin^2(theta/2).
    const double r = 1.0 + h;
    auto f = [&](double th) {
        const double sn = std::sin(0.5 * th);
        const double q2 = h * h + 4.0 * r * sn * sn;
        return 2.0 * std::pow(q2, -(1.0 + s));
    };
    std::vector<double> pts{0.0};
    for (double t : {h, 8.0 * h, 64.0 * h, 0.5, 1.5})
        if (t > 0.0 && t < M_PI && t > pts.back()) pts.push_back(t);
    pts.push_back(M_PI);
    const double scale = std::pow(std::max(h, 1e-30), -(1.0 + 2.0 * s));
    return integrate_panels(f, pts, tol * scale, 1e-11);
}

// Tail of integral_A^inf cos(z) z^{-mu} dz via repeated integration by parts.
double cos_tail(double mu, double A, int depth = 8);
double sin_tail(double mu, double A, int depth = 8);

double cos_tail(double mu, double A, int depth) {
    if (depth == 0) return 0.0;
    return -std::sin(A) * std::pow(A, -mu) + mu * sin_tail(mu + 1.0, A, depth - 1);
}

double sin_tail(double mu, double A, int depth) {
    if (depth == 0) return 0.0;
    return std::cos(A) * std::pow(A, -mu) - mu * cos_tail(mu + 1.0, A, depth - 1);
}

// J(s) = integral_0^inf (1 - cos z) z^{-1-2s} dz.
double one_minus_cos_moment(double s) {
    auto f = [&](double z) {
        const double sz = std::sin(0.5 * z);
        return 2.0 * sz * sz * std::pow(z, -1.0 - 2.0 * s);
    };
    double total = integrate_power_endpoint(f, 1.0, 1.0 - 2.0 * s, 1e-14, 1e-12);
    const double A = 64.0 * M_PI;
    std::vector<double> pts{1.0};
    for (double t = 2.0 * M_PI; t < A; t *= 2.0) pts.push_back(t);
    pts.push_back(A);
    total += integrate_panels(f, pts, 1e-14, 1e-12);
    total += std::pow(A, -2.0 * s) / (2.0 * s) - cos_tail(1.0 + 2.0 * s, A);
    return total;
}

// H(s) = integral_0^inf (1 - e^{-r^2}) r^{-1-2s} dr.
double gaussian_moment(double s) {
    auto f = [&](double r) { return -std::expm1(-r * r) * std::pow(r, -1.0 - 2.0 * s); };
    double total = integrate_power_endpoint(f, 1.0, 1.0 - 2.0 * s, 1e-14, 1e-12);
    total += integrate(f, 1.0, 9.0, 1e-14, 1e-12);
    total += std::pow(9.0, -2.0 * s) / (2.0 * s);  // e^{-81} negligible
    return total;
}

// Fitted power decay c r^{-a} from samples at r0 and 2 r0. Returns false when
// the samples vanish (treated as exactly zero tail).
bool fit_power(const RealFn& f, double r0, double& c, double& a) {
    const double f1 = f(r0), f2 = f(2.0 * r0);
    if (std::abs(f1) < 1e-280 && std::abs(f2) < 1e-280) return false;
    if (!(f1 > 0.0) || !(f2 > 0.0) || f2 >= f1)
        throw SlowDecay("oracle tail fit: samples do not decay at r >= " + std::to_string(r0));
    a = std::log(f1 / f2) / std::log(2.0);
    c = f1 * std::pow(r0, a);
    return true;
}

}  // namespace

double fraclap_pv_constant_closed_form(int N, double s) {
    return std::pow(4.0, s) * gamma_fn(0.5 * N + s) * s /
           (std::pow(M_PI, 0.5 * N) * gamma_fn(1.0 - s));
}

double fraclap_pv_constant(int N, double s) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(N, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    double c;
    if (N == 1) {
        // sin(k x) is an eigenfunction with eigenvalue |k|^{2s}; the
        // difference integral reduces to 2 J(s) independent of the point.
        c = 1.0 / (2.0 * one_minus_cos_moment(s));
    } else {
        // Match the symbol-derived value of (-Delta)^s e^{-|x|^2} at x = 0.
        const double symbol_value = std::pow(4.0, s) * gamma_fn(0.5 * N + s) / gamma_fn(0.5 * N);
        c = symbol_value / (sphere_area(N) * gaussian_moment(s));
    }
    cache.emplace(key, c);
    return c;
}

double fraclap_quadrature_oracle(const RealFn& f_radial, double x0, double s, int N,
                                 const OracleOptions& opt) {
    if (N < 1 || N > 3) throw DimensionError("oracle: N must be 1, 2, or 3");
    if (!(x0 > 0.0)) throw DomainError("oracle: x0 must be positive");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("oracle: s must be in (0,1)");

    // Reduce to |x0| = 1 by scaling.
    auto f1 = [&](double r) { return f_radial(x0 * r); };
    const double fc = f1(1.0);

    // Local derivatives at the singular radius for the small-h branch.
    const double dstep = 1e-5;
    const double fp = f1(1.0 + dstep), fm = f1(1.0 - dstep);
    const double d1 = (fp - fm) / (2.0 * dstep);
    const double d2 = (fp - 2.0 * fc + fm) / (dstep * dstep);

    auto g = [&](double r) { return std::pow(r, N - 1) * (fc - f1(r)); };
    // Folded difference G(h) = g(1+h) + (1+h)^{N+2s-2} g(1/(1+h)); the O(h)
    // terms cancel, so switch to the quadratic expansion where the direct
    // form loses precision.
    const double c2 = (2.0 * s - 1.0 - N) * d1 - d2;
    auto folded = [&](double h) {
        if (std::abs(h) < 1e-5) return c2 * h * h;
        const double r = 1.0 + h;
        return g(r) + std::pow(r, N + 2.0 * s - 2.0) * g(1.0 / r);
    };
    auto integrand = [&](double h) { return angular_kernel(h, s, N, opt.tol) * folded(h); };

    const double delta = 0.5;
    // Singular panel h in (0, delta]: substitute h = tau^{1/(2-2s)} so the
    // h^{1-2s} endpoint behaviour integrates smoothly.
    const double q = 1.0 / (2.0 - 2.0 * s);
    auto near_piece = [&](double tau) {
        const double h = std::pow(tau, q);
        return integrand(h) * q * std::pow(tau, q - 1.0);
    };
    double total = integrate(near_piece, 0.0, std::pow(delta, 1.0 / q), opt.tol, 1e-8);

    // Regular panels out to r_cut.
    auto integrand_r = [&](double r) { return integrand(r - 1.0); };
    std::vector<double> pts{1.0 + delta};
    for (double t = 2.0; t < opt.r_cut; t *= 2.0) pts.push_back(t);
    pts.push_back(opt.r_cut);
    total += integrate_panels(integrand_r, pts, opt.tol, 1e-9);

    // Analytic tails beyond r_cut using A_N(r) ~ |S^{N-1}| r^{-(N+2s)}.
    const double R = opt.r_cut;
    const double w = sphere_area(N);
    double tail =
        fc * (std::pow(R, -2.0 * s) / (2.0 * s) + std::pow(R, -static_cast<double>(N)) / N);
    double c, a;
    if (fit_power(f1, R, c, a)) tail -= c * std::pow(R, -2.0 * s - a) / (2.0 * s + a);
    // Near-origin contribution mapped to the far field: integral_0^{1/R} w^{N-1} f1(w) dw.
    const double w0 = 1.0 / R;
    const double fn1 = f1(w0), fn2 = f1(0.5 * w0);
    if (std::abs(fn1) > 1e-280 || std::abs(fn2) > 1e-280) {
        if (!(fn1 > 0.0) || !(fn2 > 0.0))
            throw SlowDecay("oracle: near-origin samples not positive");
        const double a0 = std::log(fn2 / fn1) / std::log(2.0);  // f ~ c0 w^{-a0}
        const double c0 = fn1 * std::pow(w0, a0);
        if (a0 >= N - 1e-9)
            throw SlowDecay("oracle: f not integrable near the origin (exponent >= N)");
        tail -= c0 * std::pow(w0, N - a0) / (N - a0);
    }
    total += w * tail;

    double value = fraclap_pv_constant(N, s) * std::pow(x0, -2.0 * s) * total;

    if (opt.period > 0.0) {
        if (N != 1) throw DimensionError("oracle: periodic images implemented for N = 1 only");
        // Images act where f is negligible, so the PV integral degenerates to
        // -C integral f(y) |x0 + kP - y|^{-(1+2s)} dy.
        const double C = fraclap_pv_constant(1, s);
        for (int k = 1; k <= opt.images; ++k) {
            for (double z : {x0 + k * opt.period, x0 - k * opt.period}) {
                auto img = [&](double y) {
                    return f_radial(std::abs(y)) * std::pow(std::abs(z - y), -(1.0 + 2.0 * s));
                };
                value -= C * integrate(img, -0.5 * opt.period, 0.5 * opt.period, opt.tol, 1e-9);
            }
        }
    }
    return value;
}

}  // namespace fpme
