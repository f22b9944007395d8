#include "fpme/quadrature.hpp"

#include <cmath>
#include <string>

#include "fpme/errors.hpp"

namespace fpme {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1]; the embedded 7-point
// Gauss rule uses the even-index nodes.
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    return {resk * h, std::abs(resk - resg) * h};
}

double adapt(const RealFn& f, double a, double b, double abs_tol, double rel_tol,
             int depth, int max_depth, double whole_scale) {
    PanelEstimate e = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::max(std::abs(e.value), whole_scale));
    if (e.error <= tol || b - a < 1e-15 * std::abs(a + b)) return e.value;
    if (depth >= max_depth)
        throw QuadratureFailure("adaptive quadrature: depth limit at [" + std::to_string(a) +
                                ", " + std::to_string(b) + "], err=" + std::to_string(e.error));
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, abs_tol * 0.5, rel_tol, depth + 1, max_depth, whole_scale) +
           adapt(f, c, b, abs_tol * 0.5, rel_tol, depth + 1, max_depth, whole_scale);
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double abs_tol, double rel_tol,
                 int max_depth) {
    if (a == b) return 0.0;
    PanelEstimate first = gk15(f, a, b);
    return adapt(f, a, b, abs_tol, rel_tol, 0, max_depth, std::abs(first.value));
}

double integrate_panels(const RealFn& f, const std::vector<double>& pts, double abs_tol,
                        double rel_tol) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], abs_tol, rel_tol);
    return total;
}

double integrate_power_endpoint(const RealFn& f, double b, double p, double abs_tol,
                                double rel_tol) {
    if (p <= -1.0) throw QuadratureFailure("integrate_power_endpoint: non-integrable p <= -1");
    const double q = 1.0 / (1.0 + p);
    // x = b u^q, dx = b q u^{q-1} du
    auto g = [&](double u) { return f(b * std::pow(u, q)) * b * q * std::pow(u, q - 1.0); };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

double integrate_decaying(const RealFn& f, double a, double first_width, double abs_tol,
                          double rel_tol) {
    double total = 0.0;
    double lo = a;
    double w = first_width;
    for (int k = 0; k < 64; ++k) {
        const double part = integrate(f, lo, lo + w, abs_tol, rel_tol);
        total += part;
        if (std::abs(part) < std::max(abs_tol, rel_tol * std::abs(total)) && k > 1) return total;
        lo += w;
        w *= 2.0;
    }
    throw QuadratureFailure("integrate_decaying: integrand does not decay by panel 64");
}

}  // namespace fpme
