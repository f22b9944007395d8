// Experiment runner for the fractional porous-medium laboratory.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <atomic>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpme/acceptance.hpp"
#include "fpme/analysis.hpp"
#include "fpme/config.hpp"
#include "fpme/errors.hpp"
#include "fpme/oracle.hpp"
#include "fpme/report.hpp"
#include "fpme/selfsim.hpp"
#include "fpme/specfun.hpp"
#include "fpme/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const std::string& dir) {
    if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

int cmd_constants(int N, double s, double m, double M) {
    fpme::Params p(N, s, m, M);
    json j = fpme::params_json(p);
    const fpme::Regime reg = fpme::classify(p);
    if (2.0 * s < N) j["gamma_2s"] = fpme::riesz_gamma(2.0 * s, N);
    if (reg.tag == fpme::RegimeTag::FastSingular) {
        const fpme::VssConstant v = fpme::vss_constant(p);
        j["alpha_vss"] = v.alpha_vss;
        j["k_alpha_vss"] = v.k_alpha;
        j["C_vss"] = v.C;
    }
    std::cout << j.dump(2) << "\n";
    if (!j.contains("alpha") || reg.tag == fpme::RegimeTag::Subcritical) return 2;
    return 0;
}

int cmd_kernel(const std::string& name, int N, double s, double t, double nu, double alpha,
               double eps, double xmax, int points, const std::string& out_path) {
    std::ostringstream csv;
    csv << "x,value\n";
    char buf[80];
    auto emit = [&](double x, double v) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, v);
        csv << buf;
    };
    if (name == "linear") {
        fpme::Grid g(N <= 2 ? N : 1, points, xmax);
        fpme::Field K = fpme::linear_kernel(g, t, s, 1.0);  // advisory emission: no box gate
        for (int i = 0; i < g.n; ++i) emit(g.coord(i), K.at(i));
    } else {
        for (int i = 1; i <= points; ++i) {
            const double x = xmax * i / points;
            double v = 0.0;
            if (name == "cauchy") v = fpme::cauchy_kernel(x, t, N);
            else if (name == "riesz") v = fpme::riesz_kernel(x, s, N);
            else if (name == "mollified-riesz") v = fpme::mollified_riesz(x, eps, s, N);
            else if (name == "mcdonald") v = fpme::mcdonald_K(nu, x);
            else if (name == "bessel") v = fpme::bessel_G(alpha, x, N);
            else throw fpme::ConfigError("unknown kernel name " + name);
            emit(x, v);
        }
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_path);
        f << csv.str();
    }
    return 0;
}

int cmd_evolve(const std::string& config_path, const std::string& out_override) {
    fpme::ExperimentConfig cfg =
        fpme::ExperimentConfig::load(fpme::Config::from_file(config_path), "evolve");
    if (!out_override.empty()) cfg.out_dir = out_override;
    ensure_dir(cfg.out_dir);
    cfg.scheme.store_checkpoints = true;
    fpme::Field u0 = fpme::make_initial_data(cfg);
    auto [uT, man] = fpme::run(u0, cfg.scheme, cfg.params);
    fpme::write_json_file(fpme::manifest_json(man), cfg.out_dir + "/manifest.json");
    std::ofstream csv(cfg.out_dir + "/diagnostics.csv");
    fpme::write_diagnostics_csv(man, csv);
    fpme::write_field(uT, cfg.out_dir + "/final.field");
    for (size_t k = 0; k < man.checkpoints.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "/checkpoint_%03zu.field", k);
        fpme::write_field(man.checkpoints[k], cfg.out_dir + name);
    }
    if (uT.grid.dim == 1) {
        std::ofstream slice(cfg.out_dir + "/final.csv");
        fpme::write_field_csv(uT, slice);
    }
    std::cout << "evolve: completed " << man.steps << " steps to t=" << uT.time << ", mass "
              << fpme::mass(uT) << "\n";
    return 0;
}

int cmd_profile(const std::string& config_path, const std::string& out_override) {
    fpme::ExperimentConfig cfg =
        fpme::ExperimentConfig::load(fpme::Config::from_file(config_path), "profile");
    if (!out_override.empty()) cfg.out_dir = out_override;
    ensure_dir(cfg.out_dir);
    const fpme::ProfileRoute route = cfg.route == "rescaled" ? fpme::ProfileRoute::Rescaled
                                                             : fpme::ProfileRoute::Renormalized;
    fpme::SolveOptions opt;
    opt.renorm = cfg.renorm;
    opt.scheme = cfg.scheme;
    opt.mollifier_eps = cfg.data_eps;
    fpme::Profile P = fpme::solve_profile(cfg.params, cfg.grid, route, cfg.params.M, opt);
    {
        std::ofstream csv(cfg.out_dir + "/profile.csv");
        fpme::write_profile_csv(P, csv);
    }
    const double resid = fpme::profile_residual(P, cfg.params);
    const fpme::ExpectedTail et = fpme::expected_tail(cfg.params);
    const fpme::TailFit tf = fpme::fit_tail(P, 0.15 * cfg.grid.L, 0.4 * cfg.grid.L);
    json rep;
    rep["params"] = fpme::params_json(cfg.params);
    rep["route"] = fpme::route_name(P.route);
    rep["mass"] = P.M;
    rep["center_value"] = P.center();
    rep["residual"] = resid;
    rep["tail"] = {{"fitted", tf.slope},    {"expected", et.exponent},
                   {"r2", tf.r2},           {"log_corrected", et.log_corrected},
                   {"window_lo", tf.r_lo},  {"window_hi", tf.r_hi}};
    fpme::write_json_file(rep, cfg.out_dir + "/profile_report.json");
    fpme::SvgPlot plot("profile F(r), log-log", true, true);
    plot.add_series(P.r, P.F, "steelblue", "F");
    plot.add_guide(tf.r_hi, fpme::profile_eval(P, tf.r_hi), -et.exponent, "crimson",
                   "expected slope");
    plot.write(cfg.out_dir + "/profile_loglog.svg");
    std::cout << "profile: residual " << resid << ", fitted tail " << tf.slope << " vs "
              << et.exponent << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_dir) {
    ensure_dir(out_dir);
    const std::vector<fpme::CheckResult> results = fpme::run_acceptance(suite, out_dir);
    json verdicts = json::array();
    bool all_pass = true;
    for (const fpme::CheckResult& r : results) {
        verdicts.push_back(fpme::check_json(r));
        all_pass = all_pass && r.pass;
        std::printf("%-42s %s  measured=%.6g expected=%.6g tol=%.3g\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.measured, r.expected, r.tolerance);
    }
    if (!out_dir.empty()) fpme::write_json_file(verdicts, out_dir + "/verdicts.json");
    return all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override, int workers_cli) {
    fpme::ExperimentConfig base =
        fpme::ExperimentConfig::load(fpme::Config::from_file(config_path), "sweep");
    if (!out_override.empty()) base.out_dir = out_override;
    ensure_dir(base.out_dir);
    std::vector<double> ms = base.sweep_m;
    std::sort(ms.begin(), ms.end());
    const auto dup = std::unique(ms.begin(), ms.end());
    if (dup != ms.end()) {
        std::cerr << "sweep: duplicate members removed\n";
        ms.erase(dup, ms.end());
    }
    struct Member {
        double m = 0.0;
        double fitted = 0.0, expected = 0.0;
        bool log_corrected = false;
        bool pass = false;
        std::string error;
    };
    std::vector<Member> members(ms.size());
    const int workers = workers_cli > 0 ? workers_cli : std::max(base.workers, 1);
    std::vector<std::thread> pool;
    std::atomic<size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= ms.size()) return;
            Member& mem = members[i];
            mem.m = ms[i];
            try {
                fpme::Params p(base.params.N, base.params.s, ms[i], base.params.M);
                fpme::SolveOptions opt;
                opt.renorm = base.renorm;
                fpme::Profile P = fpme::solve_profile(p, base.grid, fpme::ProfileRoute::Renormalized,
                                                      p.M, opt);
                const fpme::ExpectedTail et = fpme::expected_tail(p);
                const fpme::TailFit tf =
                    fpme::fit_tail(P, 0.15 * base.grid.L, 0.4 * base.grid.L);
                mem.fitted = tf.slope;
                mem.expected = et.exponent;
                mem.log_corrected = et.log_corrected;
                mem.pass = std::abs(tf.slope - et.exponent) <= 0.1 * et.exponent;
                char dirname[64];
                std::snprintf(dirname, sizeof dirname, "/member_m%.6g", ms[i]);
                ensure_dir(base.out_dir + dirname);
                std::ofstream csv(base.out_dir + dirname + "/profile.csv");
                fpme::write_profile_csv(P, csv);
            } catch (const std::exception& e) {
                mem.error = e.what();
                mem.pass = false;
            }
        }
    };
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();

    std::ofstream csv(base.out_dir + "/sweep.csv");
    csv << "m,s,N,fitted_tail,expected_tail,log_corrected,pass,error\n";
    bool all_pass = true;
    char buf[200];
    for (const Member& mem : members) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%.17g,%d,%d,%s\n", mem.m,
                      base.params.s, base.params.N, mem.fitted, mem.expected,
                      mem.log_corrected ? 1 : 0, mem.pass ? 1 : 0, mem.error.c_str());
        csv << buf;
        all_pass = all_pass && mem.pass;
    }
    std::cout << "sweep: " << members.size() << " members\n";
    return members.empty() ? 0 : (all_pass ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional porous-medium equation laboratory"};
    app.require_subcommand(1);

    int N = 1;
    double s = 0.5, m = 1.0, M = 1.0;
    auto* c_const = app.add_subcommand("constants", "print scaling exponents and constants");
    c_const->add_option("--N", N);
    c_const->add_option("--s", s);
    c_const->add_option("--m", m);
    c_const->add_option("--M", M);

    std::string kname = "cauchy", kout;
    double kt = 1.0, knu = 0.5, kalpha = 1.0, keps = 0.1, kxmax = 10.0;
    int kpoints = 256;
    auto* c_kernel = app.add_subcommand("kernel", "emit kernel samples as CSV");
    c_kernel->add_option("--name", kname);
    c_kernel->add_option("--N", N);
    c_kernel->add_option("--s", s);
    c_kernel->add_option("--t", kt);
    c_kernel->add_option("--nu", knu);
    c_kernel->add_option("--alpha", kalpha);
    c_kernel->add_option("--eps", keps);
    c_kernel->add_option("--x-max", kxmax);
    c_kernel->add_option("--points", kpoints);
    c_kernel->add_option("--out", kout);

    std::string config_path, out_dir, suite = "all";
    int workers = 0;
    auto* c_evolve = app.add_subcommand("evolve", "time-integrate from a config");
    c_evolve->add_option("--config", config_path)->required();
    c_evolve->add_option("--out", out_dir);
    auto* c_profile = app.add_subcommand("profile", "compute a self-similar profile");
    c_profile->add_option("--config", config_path)->required();
    c_profile->add_option("--out", out_dir);
    auto* c_verify = app.add_subcommand("verify", "run acceptance checks");
    c_verify->add_option("--suite", suite);
    c_verify->add_option("--config", config_path);
    c_verify->add_option("--out", out_dir);
    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep");
    c_sweep->add_option("--config", config_path)->required();
    c_sweep->add_option("--out", out_dir);
    c_sweep->add_option("--workers", workers);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_const->parsed()) return cmd_constants(N, s, m, M);
        if (c_kernel->parsed())
            return cmd_kernel(kname, N, s, kt, knu, kalpha, keps, kxmax, kpoints, kout);
        if (c_evolve->parsed()) return cmd_evolve(config_path, out_dir);
        if (c_profile->parsed()) return cmd_profile(config_path, out_dir);
        if (c_verify->parsed()) return cmd_verify(suite, out_dir);
        if (c_sweep->parsed()) return cmd_sweep(config_path, out_dir, workers);
    } catch (const fpme::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return 2;
    } catch (const fpme::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fpme::DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const fpme::DimensionError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
