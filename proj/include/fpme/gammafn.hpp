#pragma once

namespace fpme {

// Euler Gamma function, Lanczos approximation with reflection for z < 0.5.
// Relative error below 1e-13 on |z| <= 30. Throws PoleError at z = 0, -1, -2, ...
double gamma_fn(double z);

// log Gamma(z) for z > 0.
double lgamma_fn(double z);

}  // namespace fpme
