#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fpme/errors.hpp"
#include "fpme/fraclap.hpp"
#include "fpme/oracle.hpp"
#include "fpme/specfun.hpp"

using namespace fpme;

namespace {

// Band-limited random field for adjointness/composition checks.
Field random_smooth(const Grid& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    auto uni = [&] { return 2.0 * ((rng() >> 11) * 0x1p-53) - 1.0; };
    Field u(g, 0.0);
    for (int k = 1; k <= 6; ++k) {
        const double a = uni(), b = uni();
        for (int i = 0; i < g.n; ++i) {
            const double th = M_PI * k * g.coord(i) / g.L;
            u.at(i) += a * std::cos(th) + b * std::sin(th);
        }
    }
    return u;
}

double inner(const Field& a, const Field& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.v.size(); ++i) s += a.v[i] * b.v[i];
    return s * a.grid.cell_volume();
}

}  // namespace

TEST_CASE("apply_fraclap: Fourier eigenfunctions and constants") {
    const Grid g(1, 256, M_PI);
    SpectralOperator op(g, 0.5);
    Field u(g, 0.0);
    for (int i = 0; i < g.n; ++i) u.at(i) = std::sin(3.0 * g.coord(i));
    Field Lu = apply_fraclap(op, u);
    for (int i = 0; i < g.n; i += 17)
        CHECK(Lu.at(i) == doctest::Approx(3.0 * u.at(i)).epsilon(1e-10));

    Field c(g, 0.0);
    for (double& x : c.v) x = 4.2;
    Field Lc = apply_fraclap(op, c);
    CHECK(sup_norm(Lc) <= 1e-13);
}

TEST_CASE("apply_fraclap: s=1 matches centered finite differences at O(dx^2)") {
    auto fd_error = [&](int n) {
        const Grid g(1, n, 15.0);
        SpectralOperator op(g, 1.0);
        Field u(g, 0.0);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.coord(i);
            u.at(i) = std::exp(-x * x);
        }
        Field Lu = apply_fraclap(op, u);
        double worst = 0.0;
        const double dx = g.dx();
        for (int i = 1; i + 1 < g.n; ++i) {
            const double fd = -(u.at(i + 1) - 2.0 * u.at(i) + u.at(i - 1)) / (dx * dx);
            worst = std::max(worst, std::abs(Lu.at(i) - fd));
        }
        return worst;
    };
    const double e1 = fd_error(256), e2 = fd_error(512);
    CHECK(e2 < 0.3 * e1);  // second order in dx
}

TEST_CASE("apply_fraclap: self-adjoint, semigroup composition, conservation") {
    const Grid g(1, 512, 20.0);
    Field u = random_smooth(g, 1), v = random_smooth(g, 2);
    SpectralOperator op(g, 0.6);
    CHECK(inner(apply_fraclap(op, u), v) ==
          doctest::Approx(inner(u, apply_fraclap(op, v))).epsilon(1e-12));

    SpectralOperator op1(g, 0.3), op2(g, 0.45), op3(g, 0.75);
    Field a = apply_fraclap(op2, apply_fraclap(op1, u));
    Field b = apply_fraclap(op3, u);
    CHECK(sup_distance(a, b) <= 1e-12 * std::max(sup_norm(b), 1.0));

    CHECK(std::abs(mass(apply_fraclap(op, u))) <= 1e-14 * sup_norm(u));
}

TEST_CASE("apply_inverse: inverse identity, linearity, gauge") {
    const Grid g(1, 512, 20.0);
    SpectralOperator op(g, 0.5);
    Field u = random_smooth(g, 5);
    double mean = 0.0;
    for (double x : u.v) mean += x;
    mean /= static_cast<double>(u.v.size());

    Field back = apply_inverse(op, apply_fraclap(op, u));
    double worst = 0.0;
    for (size_t i = 0; i < u.v.size(); ++i)
        worst = std::max(worst, std::abs(back.v[i] - (u.v[i] - mean)));
    CHECK(worst <= 1e-12 * sup_norm(u));

    Field w = random_smooth(g, 9);
    Field lin1 = apply_inverse(op, u);
    Field lin2 = apply_inverse(op, w);
    Field uv(g, 0.0);
    for (size_t i = 0; i < u.v.size(); ++i) uv.v[i] = 2.0 * u.v[i] - 3.0 * w.v[i];
    Field lin = apply_inverse(op, uv);
    for (size_t i = 0; i < u.v.size(); i += 31)
        CHECK(lin.v[i] == doctest::Approx(2.0 * lin1.v[i] - 3.0 * lin2.v[i]).epsilon(1e-12));

    CHECK(std::abs(mass(lin)) <= 1e-13 * sup_norm(lin));  // zero-mode gauge
}

TEST_CASE("apply_inverse: matches the Riesz potential in 2-D after image correction") {
    // Narrow unit bump; compare U against the free-space kernel on an annulus
    // using Richardson extrapolation over two box sizes to strip the leading
    // periodic-image offset.
    const double s = 0.5;
    const double width = 0.5;
    auto potential_on = [&](double L, int n, double x) {
        const Grid g(2, n, L);
        Field u = mollifier_field(g, width, 1.0);
        SpectralOperator op(g, s);
        Field U = apply_inverse(op, u);
        const int ic = n / 2 + static_cast<int>(std::round(x / g.dx()));
        return U.at(ic, n / 2);
    };
    const int n = 256;
    double worst = 0.0;
    for (double x : {2.0, 3.0, 4.0, 5.0}) {
        const double u1 = potential_on(24.0, n, x);
        const double u2 = potential_on(48.0, 2 * n, x);
        const double extrap = 2.0 * u2 - u1;  // image offset ~ 1/L
        const double ref = riesz_kernel(x, s, 2);
        worst = std::max(worst, std::abs(extrap - ref) / ref);
    }
    CHECK(worst < 0.02);
}

TEST_CASE("quadrature oracle: normalization constant and k_alpha cross-checks") {
    for (int N : {1, 2, 3})
        for (double s : {0.25, 0.5, 0.75})
            CHECK(fraclap_pv_constant(N, s) ==
                  doctest::Approx(fraclap_pv_constant_closed_form(N, s)).epsilon(1e-10));

    // (-Delta)^s |x|^{-alpha} = k(alpha) |x|^{-alpha-2s} at |x| = 1.
    struct Case { double alpha, s; int N; };
    for (const Case& c : {Case{0.5, 0.5, 1}, Case{0.9, 0.7, 2}, Case{1.7, 0.6, 3},
                          Case{0.35, 0.25, 1}, Case{1.3, 0.45, 2}}) {
        auto f = [&](double r) { return std::pow(r, -c.alpha); };
        const double got = fraclap_quadrature_oracle(f, 1.0, c.s, c.N);
        const double want = k_alpha(c.alpha, c.s, c.N);
        CHECK(got == doctest::Approx(want).epsilon(1e-5));
    }

    // Homogeneity through the oracle: evaluation at |x| = 2.
    auto f = [](double r) { return std::pow(r, -0.5); };
    const double at2 = fraclap_quadrature_oracle(f, 2.0, 0.5, 1);
    CHECK(at2 == doctest::Approx(-0.5 * std::pow(2.0, -1.5)).epsilon(1e-5));
}

TEST_CASE("quadrature oracle: sign at a local max and bump agreement with the grid") {
    // Radial profile with a quadratic max at r = 1: positive value there.
    auto fmax = [](double r) { return std::exp(-2.0 * (r - 1.0) * (r - 1.0)); };
    CHECK(fraclap_quadrature_oracle(fmax, 1.0, 0.5, 1) > 0.0);

    const Grid g(1, 1024, 40.0);
    const double s = 0.5;
    SpectralOperator op(g, s);
    const double w = 6.0;
    auto bump = [&](double r) {
        const double z = r / w;
        return z < 1.0 ? std::exp(-1.0 / (1.0 - z * z)) : 0.0;
    };
    Field u(g, 0.0);
    for (int i = 0; i < g.n; ++i) u.at(i) = bump(std::abs(g.coord(i)));
    Field Lu = apply_fraclap(op, u);
    OracleOptions opt;
    opt.period = 2.0 * g.L;
    double sup_ref = 0.0, worst = 0.0;
    for (double x : {0.3, 1.2, 2.5, 3.9, 5.0, 6.5, 8.0, 9.6, 11.0, 14.0}) {
        const double ref = fraclap_quadrature_oracle(bump, x, s, 1, opt);
        const int i = g.n / 2 + static_cast<int>(std::round(x / g.dx()));
        sup_ref = std::max(sup_ref, std::abs(ref));
        worst = std::max(worst, std::abs(ref - Lu.at(i)));
    }
    CHECK(worst <= 1e-4 * sup_ref);
}

TEST_CASE("resample_scaled: exact on band-limited data, composes on lattice scales") {
    const Grid g(1, 256, 10.0);
    Field u(g, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double th = M_PI * g.coord(i) / g.L;
        u.at(i) = 1.4 * std::cos(2.0 * th) + 0.3 * std::sin(5.0 * th);
    }
    // Direct evaluation against the analytic trigonometric polynomial.
    Field r3 = resample_scaled(u, 3.0);
    for (int i = 0; i < g.n; ++i) {
        const double x = 3.0 * g.coord(i);
        const double want = std::abs(x) > g.L
                                ? 0.0
                                : 1.4 * std::cos(2.0 * M_PI * x / g.L) +
                                      0.3 * std::sin(5.0 * M_PI * x / g.L);
        CHECK(r3.at(i) == doctest::Approx(want).epsilon(1e-11));
    }
    // Composition on a spectrally and spatially localized field.
    Field w(g, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i) / 0.8;
        w.at(i) = std::exp(-x * x);
    }
    Field a = resample_scaled(resample_scaled(w, 2.0), 0.5);
    CHECK(sup_distance(a, w) <= 1e-10 * sup_norm(w));
}

TEST_CASE("field io: binary round trip") {
    const Grid g(2, 16, 3.0);
    Field u(g, 0.75);
    for (size_t i = 0; i < u.v.size(); ++i) u.v[i] = std::sin(0.1 * static_cast<double>(i));
    const std::string path = "tmp_field_roundtrip.bin";
    write_field(u, path);
    Field v = read_field(path);
    CHECK(v.grid == g);
    CHECK(v.time == u.time);
    CHECK(sup_distance(u, v) == 0.0);
    std::remove(path.c_str());
}
