#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <sstream>

#include "fpme/config.hpp"
#include "fpme/errors.hpp"
#include "fpme/report.hpp"
#include "fpme/specfun.hpp"
#include "fpme/svg.hpp"

using namespace fpme;

TEST_CASE("config: parsing, comments, typed getters, errors") {
    Config c = Config::from_string(
        "# run setup\n"
        "N = 1\n"
        "s= 0.5\n"
        "m =2   # slow regime\n"
        "grid.n = 1024\n"
        "grid.L = 40\n"
        "flag = true\n"
        "sweep.m = 0.35, 0.45, 1\n");
    CHECK(c.integer("N", 0) == 1);
    CHECK(c.num("s", 0.0) == 0.5);
    CHECK(c.num("m", 0.0) == 2.0);
    CHECK(c.integer("grid.n", 0) == 1024);
    CHECK(c.boolean("flag", false));
    CHECK(c.num("missing", 7.5) == 7.5);
    CHECK(c.num_list("sweep.m").size() == 3);
    CHECK_THROWS_AS(c.require("absent"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("novalue\n"), ConfigError);
    CHECK_THROWS_AS(c.integer("s", 0), ConfigError);
}

TEST_CASE("experiment config: defaults and the point-mass regime gate") {
    Config ok = Config::from_string("N = 1\ns = 0.5\nm = 2\ngrid.n = 256\ngrid.L = 20\n");
    ExperimentConfig e = ExperimentConfig::load(ok, "evolve");
    CHECK(e.scheme.t_end == 1.0);
    CHECK(e.data_kind == "mollifier");

    // Subcritical point-mass runs are refused up front with the reason.
    Config bad = Config::from_string("N = 2\ns = 0.5\nm = 0.4\ngrid.dim = 2\ngrid.n = 64\ngrid.L = 20\n");
    try {
        ExperimentConfig::load(bad, "evolve");
        FAIL("expected RegimeError");
    } catch (const RegimeError& err) {
        CHECK(std::string(err.what()).find("does not spread") != std::string::npos);
    }

    // Function data in the same regime is fine.
    Config fn = Config::from_string(
        "N = 2\ns = 0.5\nm = 0.4\ngrid.dim = 2\ngrid.n = 64\ngrid.L = 20\ndata.kind = box\n");
    CHECK_NOTHROW(ExperimentConfig::load(fn, "evolve"));
}

TEST_CASE("initial data: kinds and exact discrete mass") {
    Config c = Config::from_string(
        "N = 1\ns = 0.5\nm = 2\nM = 2.5\ngrid.n = 256\ngrid.L = 20\ndata.kind = box\n"
        "data.width = 3\n");
    ExperimentConfig e = ExperimentConfig::load(c, "evolve");
    Field u = make_initial_data(e);
    CHECK(mass(u) == doctest::Approx(2.5).epsilon(1e-14));

    Config tb = Config::from_string(
        "N = 1\ns = 0.5\nm = 2\ngrid.n = 256\ngrid.L = 20\ndata.kind = two-bump\n"
        "data.eps = 1.5\n");
    Field v = make_initial_data(ExperimentConfig::load(tb, "evolve"));
    CHECK(mass(v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("manifest json and diagnostics csv are deterministic") {
    const Grid g(1, 64, 10.0);
    Params p(1, 0.5, 1.0);
    SchemeConfig cfg;
    cfg.t_end = 0.05;
    cfg.dt_init = 1e-3;
    Field u0 = mollifier_field(g, 1.0, 1.0);
    auto r1 = run(u0, cfg, p);
    auto r2 = run(u0, cfg, p);
    const std::string j1 = manifest_json(r1.second).dump();
    const std::string j2 = manifest_json(r2.second).dump();
    CHECK(j1 == j2);
    std::ostringstream c1, c2;
    write_diagnostics_csv(r1.second, c1);
    write_diagnostics_csv(r2.second, c2);
    CHECK(c1.str() == c2.str());
    CHECK(c1.str().rfind("t,mass,", 0) == 0);

    nlohmann::json pj = params_json(Params(1, 0.5, 2.0));
    CHECK(pj["regime"] == "Slow");
    CHECK(pj["alpha"] == 0.5);
}

TEST_CASE("params json: degenerate case omits exponents") {
    nlohmann::json pj = params_json(Params(3, 0.5, 2.0 / 3.0));
    CHECK_FALSE(pj.contains("alpha"));
    CHECK(pj["regime"] == "Subcritical");
}

TEST_CASE("svg plot writes a well-formed file") {
    SvgPlot plot("tail", true, true);
    plot.add_series({1.0, 2.0, 4.0, 8.0}, {1.0, 0.25, 0.0625, 0.015625}, "steelblue", "F");
    plot.add_guide(1.0, 1.0, -2.0, "crimson", "slope -2");
    const std::string path = "tmp_plot.svg";
    plot.write(path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    CHECK(ss.str().find("polyline") != std::string::npos);
    std::remove(path.c_str());
}
