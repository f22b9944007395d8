#pragma once

#include <functional>
#include <vector>

namespace fpme {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
// Throws QuadratureFailure when the requested tolerance cannot be met.
double integrate(const RealFn& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-10, int max_depth = 48);

// Integrate over a chain of panels [pts[0],pts[1]], [pts[1],pts[2]], ...
double integrate_panels(const RealFn& f, const std::vector<double>& pts,
                        double abs_tol = 1e-12, double rel_tol = 1e-10);

// Integrate f over [0, b] where f(x) ~ c x^p near 0 with p > -1 (integrable
// endpoint behaviour). Uses the substitution x = b u^{1/(1+p)}.
double integrate_power_endpoint(const RealFn& f, double b, double p,
                                double abs_tol = 1e-12, double rel_tol = 1e-10);

// Integrate f over [a, inf) for integrands with fast (at least exponential-ish)
// decay: doubles panel widths until a panel contributes less than tol.
double integrate_decaying(const RealFn& f, double a, double first_width,
                          double abs_tol = 1e-12, double rel_tol = 1e-10);

}  // namespace fpme
