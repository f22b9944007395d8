#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fpme/errors.hpp"
#include "fpme/evolve.hpp"
#include "fpme/fft.hpp"
#include "fpme/specfun.hpp"

using namespace fpme;

namespace {

Field gaussian(const Grid& g, double width, double target_mass) {
    Field u(g, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i) / width;
        u.at(i) = std::exp(-x * x);
    }
    const double m0 = mass(u);
    for (double& x : u.v) x *= target_mass / m0;
    return u;
}

}  // namespace

TEST_CASE("step: constant data is steady") {
    const Grid g(1, 64, 10.0);
    Params p(1, 0.5, 2.0);
    SchemeConfig cfg;
    Field u(g, 0.0);
    for (double& x : u.v) x = 3.25;
    Field v = step(u, cfg, p);
    CHECK(sup_distance(u, v) <= 1e-14);
}

TEST_CASE("step: absorption on constant linear data decays like e^{-eps t}") {
    const Grid g(1, 64, 10.0);
    Params p(1, 0.5, 1.0);
    SchemeConfig cfg;
    cfg.eps_absorption = 0.5;
    cfg.adaptive = true;
    cfg.dt_init = 5e-4;
    cfg.t_end = 1.0;
    Field u(g, 0.0);
    for (double& x : u.v) x = 2.0;
    auto [uT, man] = run(u, cfg, p);
    const double want = 2.0 * std::exp(-0.5 * 1.0);
    CHECK(uT.at(17) == doctest::Approx(want).epsilon(1e-8));
    CHECK(man.termination == "completed");
}

TEST_CASE("run: linear case reproduces the exact grid semigroup") {
    const Grid g(1, 512, 40.0);
    Params p(1, 0.5, 1.0);
    SchemeConfig cfg;
    cfg.t_end = 0.5;
    cfg.dt_init = 0.004;
    cfg.box_tail_frac = 1.0;  // short horizon; tails immaterial here
    Field u0 = mollifier_field(g, 2.0 * g.dx(), 1.0);
    auto [uT, man] = run(u0, cfg, p);

    // Exact solution on the same grid: multiply the spectrum by e^{-|xi| t}.
    const Fft& fft = Fft::plan(g);
    std::vector<std::complex<double>> spec(g.n / 2 + 1);
    fft.forward(u0.v.data(), spec.data());
    for (int k = 0; k <= g.n / 2; ++k)
        spec[k] *= std::exp(-(M_PI * k / g.L) * cfg.t_end);
    Field ref(g, cfg.t_end);
    fft.backward_destroys(spec.data(), ref.v.data());

    CHECK(sup_distance(uT, ref) <= 2e-5 * sup_norm(ref));
    CHECK(std::abs(mass(uT) - 1.0) <= 1e-12);
}

TEST_CASE("run: nonlinear mass conservation and monotone sup norm") {
    const Grid g(1, 1024, 40.0);
    Params p(1, 0.5, 2.0);
    SchemeConfig cfg;
    cfg.t_end = 2.0;
    cfg.checkpoint_t0 = 0.02;
    Field u0 = gaussian(g, 2.0, 1.0);
    auto [uT, man] = run(u0, cfg, p);
    CHECK(man.termination == "completed");
    CHECK(std::abs(mass(uT) - 1.0) <= 1e-9);
    CHECK(man.clipped_mass <= 1e-9);
    for (size_t k = 1; k < man.series.size(); ++k)
        CHECK(man.series[k].supnorm <= man.series[k - 1].supnorm * (1.0 + 1e-10));
    // Energy stays finite and trends down.
    CHECK(man.series.back().energy < man.series.front().energy);
}

TEST_CASE("run: fast-diffusion case conserves mass within budget") {
    const Grid g(1, 1024, 40.0);
    Params p(1, 0.5, 1.0 / 3.0);
    SchemeConfig cfg;
    cfg.t_end = 0.25;
    cfg.checkpoint_t0 = 0.01;
    Field u0 = mollifier_field(g, 1.0, 1.0);
    auto [uT, man] = run(u0, cfg, p);
    CHECK(std::abs(mass(uT) - 1.0) <= 1e-6);
    CHECK(man.clipped_mass <= 1e-6);
    for (size_t k = 1; k < man.series.size(); ++k)
        CHECK(man.series[k].supnorm <= man.series[k - 1].supnorm * (1.0 + 1e-10));
}

TEST_CASE("comparison_check: ordering preserved, input gate") {
    const Grid g(1, 512, 30.0);
    Params p(1, 0.5, 2.0);
    SchemeConfig cfg;
    cfg.t_end = 0.5;
    cfg.checkpoint_t0 = 0.05;
    Field u0 = gaussian(g, 2.0, 1.0);
    Field v0 = u0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i) - 3.0;
        v0.at(i) += 0.4 * std::exp(-x * x);
    }
    ComparisonReport rep = comparison_check(u0, v0, cfg, p);
    CHECK(rep.pass);
    CHECK(rep.max_violation <= rep.tolerance);

    ComparisonReport same = comparison_check(u0, u0, cfg, p);
    CHECK(same.max_violation == 0.0);

    CHECK_THROWS_AS(comparison_check(v0, u0, cfg, p), InputNotOrdered);
}

TEST_CASE("run: epsilon-monotone family") {
    const Grid g(1, 512, 30.0);
    Params p(1, 0.5, 2.0);
    SchemeConfig cfg;
    cfg.t_end = 0.5;
    cfg.checkpoint_t0 = 0.05;
    cfg.store_checkpoints = true;
    Field u0 = gaussian(g, 2.0, 1.0);
    RunManifest men[3];
    const double epses[3] = {0.0, 0.1, 0.3};
    for (int i = 0; i < 3; ++i) {
        SchemeConfig c = cfg;
        c.eps_absorption = epses[i];
        men[i] = run(u0, c, p).second;
    }
    const double slack = 1e-8 * sup_norm(u0);
    for (size_t k = 0; k < men[0].checkpoints.size(); ++k) {
        for (size_t i = 0; i < men[0].checkpoints[k].v.size(); i += 7) {
            CHECK(men[2].checkpoints[k].v[i] <= men[1].checkpoints[k].v[i] + slack);
            CHECK(men[1].checkpoints[k].v[i] <= men[0].checkpoints[k].v[i] + slack);
        }
    }
}

TEST_CASE("run: scaling-group equivariance within scheme error") {
    const Grid g(1, 1024, 60.0);
    Params p(1, 0.5, 2.0);
    const double lambda = 2.0;
    Field u0 = gaussian(g, 1.5, 1.0);

    SchemeConfig cfg;
    cfg.t_end = 1.0;
    auto [uT, m1] = run(u0, cfg, p);
    Field lhs = rescale_solution(uT, lambda, p);  // T_lambda of the t = lambda * (t/lambda) state

    Field v0 = rescale_solution(u0, lambda, p);
    SchemeConfig cfg2 = cfg;
    cfg2.t_end = cfg.t_end / lambda;
    auto [vT, m2] = run(v0, cfg2, p);

    CHECK(sup_distance(lhs, vT) <= 5e-4 * sup_norm(vT));
}

TEST_CASE("run: box monitor trips when mass reaches the boundary zone") {
    const Grid g(1, 256, 8.0);
    Params p(1, 0.5, 1.0);
    SchemeConfig cfg;
    cfg.t_end = 6.0;
    cfg.box_tail_frac = 1e-4;
    Field u0 = mollifier_field(g, 0.5, 1.0);
    CHECK_THROWS_AS(run(u0, cfg, p), BoxTooSmall);
}

TEST_CASE("fixed-dt mode: stability gate") {
    const Grid g(1, 256, 10.0);
    Params p(1, 0.5, 2.0);
    SchemeConfig cfg;
    cfg.adaptive = false;
    cfg.dt_init = 10.0;  // far beyond the bound
    Field u0 = gaussian(g, 1.0, 1.0);
    CHECK_THROWS_AS(step(u0, cfg, p), StabilityViolation);
}
