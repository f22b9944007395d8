#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fpme/errors.hpp"
#include "fpme/fraclap.hpp"
#include "fpme/gammafn.hpp"
#include "fpme/quadrature.hpp"
#include "fpme/specfun.hpp"

using namespace fpme;

TEST_CASE("gamma_fn: classical values and recurrence") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    // Gamma(-1/4) = -4 Gamma(3/4) by the recurrence Gamma(z+1) = z Gamma(z):
    // frozen from Gamma(3/4) = 1.2254167024651776.
    CHECK(gamma_fn(-0.25) == doctest::Approx(-4.9016668098607103).epsilon(1e-12));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const double z = 0.1 + 20.0 * ((rng() >> 11) * 0x1p-53);
        CHECK(gamma_fn(z + 1.0) == doctest::Approx(z * gamma_fn(z)).epsilon(1e-12));
        CHECK(gamma_fn(z) == doctest::Approx(std::tgamma(z)).epsilon(1e-12));
    }
    for (double z : {-0.3, -1.7, -5.25}) {
        CHECK(gamma_fn(z) == doctest::Approx(std::tgamma(z)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(gamma_fn(0.0), PoleError);
    CHECK_THROWS_AS(gamma_fn(-3.0), PoleError);
}

TEST_CASE("riesz_gamma: values, limit ratio, domain") {
    // gamma(1/2) in 1-D: the Gamma factors cancel, leaving sqrt(2 pi).
    CHECK(riesz_gamma(0.5, 1) == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-13));
    // gamma(1) in 3-D: pi^{3/2} 2 Gamma(1/2) = 2 pi^2.
    CHECK(riesz_gamma(1.0, 3) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));
    for (int N : {1, 2, 3}) {
        const double a = N - 1e-7;
        CHECK(riesz_gamma(a, N) / (N - a) ==
              doctest::Approx(riesz_gamma_limit_ratio(N)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(riesz_gamma(1.5, 1), DomainError);
    CHECK_THROWS_AS(riesz_gamma(-0.1, 2), DomainError);
}

TEST_CASE("k_alpha: closed cases, sign, poles, s->1 continuity") {
    // s = 1 reduces to alpha(N - alpha - 2).
    CHECK(k_alpha(0.7, 1.0, 3) == doctest::Approx(0.7 * (3 - 0.7 - 2)).epsilon(1e-14));
    CHECK(k_alpha(1.5, 1.0, 2) == doctest::Approx(1.5 * (2 - 1.5 - 2)).epsilon(1e-14));

    // Hand value via the Gamma recurrence: Gamma(-1/4) = -4 Gamma(3/4) makes
    // k(1/2; s=1/2, N=1) = 2 Gamma(3/4)/Gamma(-1/4) = -1/2.
    CHECK(k_alpha(0.5, 0.5, 1) == doctest::Approx(-0.5).epsilon(1e-12));

    // Negative on the window (N-2s, N).
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const int N = 1 + static_cast<int>(rng() % 3);
        const double s = 0.15 + 0.7 * ((rng() >> 11) * 0x1p-53);
        const double lo = std::max(N - 2.0 * s, 0.0);
        const double a = lo + (N - lo) * (0.05 + 0.9 * ((rng() >> 11) * 0x1p-53));
        CHECK(k_alpha(a, s, N) < 0.0);
    }

    // Pole of Gamma((N-alpha-2s)/2) at alpha = N-2s.
    CHECK_THROWS_AS(k_alpha(2.0, 0.5, 3), PoleError);

    // Continuity toward the classical value, error O(1-s).
    const double target = 0.7 * (2 - 0.7 - 2);
    double prev = std::abs(k_alpha(0.7, 0.9, 2) - target);
    for (double s : {0.99, 0.999}) {
        const double d = std::abs(k_alpha(0.7, s, 2) - target);
        CHECK(d < 0.2 * prev);
        prev = d;
    }
    CHECK(prev < 2e-3);
}

TEST_CASE("vss_constant: worked chain, gate, window limit") {
    const VssConstant v = vss_constant(Params(1, 0.5, 1.0 / 3.0));
    CHECK(v.alpha_vss == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.k_alpha == doctest::Approx(-0.5).epsilon(1e-12));
    // C = ((2/3)(1/2))^{3/2} = (1/3)^{3/2}
    CHECK(v.C == doctest::Approx(0.19245008972987526).epsilon(1e-12));

    CHECK_THROWS_AS(vss_constant(Params(1, 0.5, 0.6)), RegimeError);
    CHECK_THROWS_AS(vss_constant(Params(1, 0.5, 2.0)), RegimeError);

    // alpha_vss increases to N as m increases to m_1.
    double prev = 0.0;
    for (double m : {0.3, 0.4, 0.45, 0.49, 0.499}) {
        const double a = vss_constant(Params(1, 0.5, m)).alpha_vss;
        CHECK(a > prev);
        CHECK(a < 1.0);
        prev = a;
    }
    CHECK(prev > 0.99);
}

TEST_CASE("cauchy_kernel: normalization, value, scaling") {
    CHECK(cauchy_constant(1) == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
    CHECK(cauchy_kernel(0.0, 1.0, 1) == doctest::Approx(1.0 / M_PI).epsilon(1e-10));

    // Unit mass for several t: direct quadrature plus the exact w = 1/x tail.
    for (double t : {0.5, 1.0, 3.0}) {
        auto f = [&](double x) { return cauchy_kernel(x, t, 1); };
        double I = 2.0 * integrate(f, 0.0, 100.0, 1e-12, 1e-11);
        I += 2.0 * integrate(
                 [&](double w) {
                     return cauchy_constant(1) * t / (1.0 + t * t * w * w);
                 },
                 0.0, 0.01, 1e-14, 1e-12);
        CHECK(I == doctest::Approx(1.0).epsilon(1e-8));
    }

    // K(x, t) = t^{-N} K(x/t, 1).
    for (double x : {0.3, 2.0, 9.0})
        CHECK(cauchy_kernel(x, 2.0, 1) ==
              doctest::Approx(0.5 * cauchy_kernel(x / 2.0, 1.0, 1)).epsilon(1e-14));
}

TEST_CASE("linear_kernel: s=1/2 matches the explicit kernel") {
    const Grid g(1, 2048, 40.0);
    const double t = 0.5;
    Field K = linear_kernel(g, t, 0.5, 2e-2);  // precondition relaxed: heavy tail
    double sup_ref = 0.0, worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i);
        if (std::abs(x) > 0.5 * g.L) continue;
        const double ref = cauchy_kernel(x, t, 1);
        sup_ref = std::max(sup_ref, ref);
        worst = std::max(worst, std::abs(K.at(i) - ref));
    }
    CHECK(worst / sup_ref < 1e-4);
    CHECK(mass(K) == doctest::Approx(1.0).epsilon(1e-13));  // zero mode exactly 1
    CHECK(min_value(K) >= -1e-8 * sup_norm(K));
}

TEST_CASE("linear_kernel: approaches the Gaussian as s -> 1") {
    const Grid g(1, 1024, 40.0);
    const double t = 2.0;
    auto gauss_err = [&](double s) {
        Field K = linear_kernel(g, t, s, 1.0);
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double x = g.coord(i);
            const double ref = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
            worst = std::max(worst, std::abs(K.at(i) - ref));
        }
        return worst;
    };
    const double e1 = gauss_err(0.9), e2 = gauss_err(0.99), e3 = gauss_err(0.999);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(e3 < 2e-3);
    CHECK(gauss_err(1.0) < 1e-12);
}

TEST_CASE("linear_kernel: algebraic tail and box gate") {
    const Grid g(1, 4096, 100.0);
    const double s = 0.75, t = 1.0;
    Field K = linear_kernel(g, t, s, 1e-2);
    // log-log slope of the tail over [0.2 L, 0.45 L].
    std::vector<double> lx, ly;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i);
        if (x > 0.2 * g.L && x < 0.45 * g.L && K.at(i) > 0.0) {
            lx.push_back(std::log(x));
            ly.push_back(std::log(K.at(i)));
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
    }
    const double n = static_cast<double>(lx.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-(1.0 + 2.0 * s)).epsilon(0.05));

    // The stated default gate rejects a heavy-tailed kernel on a small box.
    CHECK_THROWS_AS(linear_kernel(Grid(1, 2048, 40.0), 1.0, 0.5), BoxTooSmall);
}

TEST_CASE("riesz_kernel: domain gate, worked value, homogeneity") {
    CHECK_THROWS_AS(riesz_kernel(1.0, 0.6, 1), DimensionError);
    // (1/gamma(1)) 2^{-2} with gamma(1) = 2 pi^2 in 3-D.
    CHECK(riesz_kernel(2.0, 0.5, 3) ==
          doctest::Approx(1.0 / (8.0 * M_PI * M_PI)).epsilon(1e-12));
    const double lam = 3.7;
    CHECK(riesz_kernel(lam * 1.3, 0.5, 3) ==
          doctest::Approx(std::pow(lam, -2.0) * riesz_kernel(1.3, 0.5, 3)).epsilon(1e-13));
}

TEST_CASE("mollified_riesz: two-sided bounds and scaling") {
    const int N = 3;
    const double s = 0.5, eps = 0.5;
    auto V = [&](double x) { return riesz_kernel(x, s, N); };

    // V <= V_eps, with the excess controlled by (eps/|x|)^2.
    std::vector<double> ratio;
    for (double f : {2.0, 4.0, 8.0, 16.0}) {
        const double x = f * eps;
        const double ve = mollified_riesz(x, eps, s, N);
        CHECK(ve >= V(x) * (1.0 - 1e-9));
        ratio.push_back((ve / V(x) - 1.0) * (x / eps) * (x / eps));
    }
    for (double r : ratio) {
        CHECK(r < 10.0);
        CHECK(r > 0.0);
    }

    // V_eps <= C V everywhere (C modest), including inside the mollifier.
    for (double x : {0.1 * eps, 0.5 * eps, 1.0 * eps}) {
        CHECK(mollified_riesz(x, eps, s, N) <= 2.0 * V(x));
    }

    // V_{eps mu}(x) = V_eps(x/mu) / mu^{N-2s}.
    const double mu = 2.5;
    for (double x : {1.0, 2.0, 5.0}) {
        CHECK(mollified_riesz(x, eps * mu, s, N) ==
              doctest::Approx(mollified_riesz(x / mu, eps, s, N) / std::pow(mu, N - 2.0 * s))
                  .epsilon(1e-9));
    }
}

TEST_CASE("mcdonald_K: closed form, asymptotics, symmetry") {
    // K_{1/2}(r) = sqrt(pi/2r) e^{-r}.
    for (double r : {0.3, 1.0, 5.0}) {
        CHECK(mcdonald_K(0.5, r) ==
              doctest::Approx(std::sqrt(M_PI / (2.0 * r)) * std::exp(-r)).epsilon(1e-10));
    }
    // Small r: K_nu(r) (r/2)^nu 2/Gamma(nu) -> 1.
    for (double nu : {0.5, 1.0}) {
        const double r = 1e-3;
        const double lim = mcdonald_K(nu, r) * std::pow(0.5 * r, nu) * 2.0 / gamma_fn(nu);
        CHECK(lim == doctest::Approx(1.0).epsilon(5e-3));
    }
    // Large r at r = 30 within 2%.
    for (double nu : {0.5, 1.0}) {
        const double r = 30.0;
        const double lim = mcdonald_K(nu, r) * std::exp(r) * std::sqrt(2.0 * r / M_PI);
        CHECK(lim == doctest::Approx(1.0).epsilon(0.02));
    }
    CHECK(mcdonald_K(-0.8, 2.0) == doctest::Approx(mcdonald_K(0.8, 2.0)).epsilon(1e-14));
}

TEST_CASE("bessel_G: bounds, boundedness for 2s >= 1 in 1-D, Fourier check") {
    // |x| > 1: 0 < G_alpha(x) < e^{-|x|/2}.
    for (double x : {1.5, 3.0, 6.0}) {
        const double gv = bessel_G(1.0, x, 3);
        CHECK(gv > 0.0);
        CHECK(gv < std::exp(-0.5 * x));
    }
    // 0 < |x| < 1, alpha < N: G <= C |x|^{-(N-alpha)}.
    double worst = 0.0;
    for (double x : {1e-3, 1e-2, 0.1, 0.5})
        worst = std::max(worst, bessel_G(1.0, x, 3) * std::pow(x, 2.0));
    CHECK(worst < 1.0);

    // N=1, alpha = 2s >= 1: bounded at the origin.
    const double a = bessel_G(1.2, 1e-6, 1);
    const double b = bessel_G(1.2, 1e-7, 1);
    CHECK(std::isfinite(a));
    CHECK(a == doctest::Approx(b).epsilon(5e-2));

    // Discrete Fourier transform matches (1+|xi|^2)^{-alpha/2}.
    const Grid g(1, 8192, 30.0);
    const double alpha = 1.2;
    Field G(g, 0.0);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i);
        G.at(i) = x == 0.0 ? bessel_G(alpha, 1e-9, 1) : bessel_G(alpha, x, 1);
    }
    std::vector<std::complex<double>> spec(g.n / 2 + 1);
    Fft::plan(g).forward(G.v.data(), spec.data());
    CHECK(std::abs(spec[0].real() * g.dx() - 1.0) < 2e-3);  // unit mass
    for (int k = 1; k <= 100; k += 9) {
        const double xi = M_PI * k / g.L;
        const double ref = std::pow(1.0 + xi * xi, -0.5 * alpha);
        const double phase = (k % 2 == 0) ? 1.0 : -1.0;  // grid starts at -L
        const double got = phase * spec[k].real() * g.dx();
        CHECK(got == doctest::Approx(ref).epsilon(5e-3));
    }
}

TEST_CASE("mollifier_field: unit mass and resolution guard") {
    const Grid g(1, 512, 20.0);
    Field u = mollifier_field(g, 4.0 * g.dx(), 2.5);
    CHECK(mass(u) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(support_radius(u, 0.0) <= 4.0 * g.dx());
}
