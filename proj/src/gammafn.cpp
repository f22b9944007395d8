#include "fpme/gammafn.hpp"

#include <cmath>
#include <string>

#include "fpme/errors.hpp"

namespace fpme {

namespace {

// Lanczos coefficients for g = 607/128, 15 terms (Godfrey's set).
const double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kLanczosG = 4.7421875;  // 607/128

// A_g(z) = c0 + sum_i c_i / (z - 1 + i)
double lanczos_a(double z) {
    double ser = kLanczos[0];
    for (int i = 1; i < 15; ++i) ser += kLanczos[i] / (z - 1.0 + i);
    return ser;
}

bool is_nonpositive_integer(double z) {
    return z <= 0.0 && z == std::floor(z);
}

}  // namespace

double lgamma_fn(double z) {
    if (z <= 0.0) throw DomainError("lgamma_fn requires z > 0, got z=" + std::to_string(z));
    const double t = z + kLanczosG - 0.5;
    return 0.91893853320467274178 + (z - 0.5) * std::log(t) - t + std::log(lanczos_a(z));
}

double gamma_fn(double z) {
    if (is_nonpositive_integer(z))
        throw PoleError("gamma_fn pole at nonpositive integer z=" + std::to_string(z));
    if (z < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * gamma_fn(1.0 - z));
    }
    const double t = z + kLanczosG - 0.5;
    return 2.5066282746310005 * std::pow(t, z - 0.5) * std::exp(-t) * lanczos_a(z);
}

}  // namespace fpme
