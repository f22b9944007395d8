#include "fpme/params.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fpme/errors.hpp"
#include "fpme/fraclap.hpp"

namespace fpme {

Params::Params(int N_, double s_, double m_, double M_) : N(N_), s(s_), m(m_), M(M_) {
    if (N < 1) throw DomainError("Params: N must be >= 1");
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("Params: s must be in (0, 1]");
    if (!(m > 0.0)) throw DomainError("Params: m must be positive");
    if (!(M > 0.0)) throw DomainError("Params: M must be positive");
}

std::string regime_name(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::Subcritical: return "Subcritical";
        case RegimeTag::FastSingular: return "FastSingular";
        case RegimeTag::Borderline: return "Borderline";
        case RegimeTag::FastRegular: return "FastRegular";
        case RegimeTag::Linear: return "Linear";
        case RegimeTag::Slow: return "Slow";
    }
    return "?";
}

double critical_m(int N, double s) { return std::max((N - 2.0 * s) / N, 0.0); }

double borderline_m(int N, double s) { return N / (N + 2.0 * s); }

Exponents exponents(const Params& p) {
    const double denom = p.N * (p.m - 1.0) + 2.0 * p.s;
    if (denom == 0.0)
        throw DegenerateScaling("exponents: N(m-1)+2s vanishes (m equals m_c exactly)");
    Exponents e;
    e.beta = 1.0 / denom;
    e.alpha = p.N * e.beta;  // keeps alpha == N*beta bit-exact
    return e;
}

Regime classify(const Params& p) {
    Regime r;
    r.m_c = critical_m(p.N, p.s);
    r.m_1 = borderline_m(p.N, p.s);
    const double m = p.m;
    if (m <= r.m_c) r.tag = RegimeTag::Subcritical;
    else if (m == 1.0) r.tag = RegimeTag::Linear;
    else if (m > 1.0) r.tag = RegimeTag::Slow;
    else if (m == r.m_1 || std::abs(m - r.m_1) < 1e-12) r.tag = RegimeTag::Borderline;
    else if (m < r.m_1) r.tag = RegimeTag::FastSingular;
    else r.tag = RegimeTag::FastRegular;
    return r;
}

Field rescale_solution(const Field& u, double lambda, const Params& p) {
    if (!(lambda > 0.0)) throw DomainError("rescale_solution: lambda must be positive");
    const Regime reg = classify(p);
    if (p.m <= reg.m_c)
        throw RegimeError("rescale_solution: requires m > m_c");
    if (lambda == 1.0) return u;
    const Exponents e = exponents(p);
    const double stretch = std::pow(lambda, -e.beta);
    if (stretch > 1.0) {
        const double supp = support_radius(u, 1e-12 * sup_norm(u));
        if (stretch * supp > u.grid.L)
            throw GridOverflow("rescale_solution: rescaled support exceeds the box");
    }
    Field out = resample_scaled(u, std::pow(lambda, e.beta));
    const double amp = std::pow(lambda, e.alpha);
    for (double& x : out.v) x *= amp;
    out.time = u.time / lambda;
    return out;
}

std::pair<Field, Params> mass_normalize(const Field& u, const Params& p) {
    const double M = mass(u);
    if (!(M > 0.0)) throw ZeroMass("mass_normalize: mass(u) <= 0");
    Field out = u;
    for (double& x : out.v) x /= M;
    out.time = u.time * std::pow(M, -(p.m - 1.0));
    Params q = p;
    q.M = 1.0;
    return {std::move(out), q};
}

Field mass_denormalize(const Field& u, double M, const Params& p) {
    if (!(M > 0.0)) throw ZeroMass("mass_denormalize: M <= 0");
    Field out = u;
    for (double& x : out.v) x *= M;
    out.time = u.time * std::pow(M, p.m - 1.0);
    return out;
}

}  // namespace fpme
