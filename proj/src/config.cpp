#include "fpme/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fpme/errors.hpp"
#include "fpme/specfun.hpp"

namespace fpme {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        c.kv_[key] = val;
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required config key '" + key + "'");
    return it->second;
}

double Config::num(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: " + it->second);
    }
}

double Config::require_num(const std::string& key) const {
    require(key);
    return num(key, 0.0);
}

int Config::integer(const std::string& key, int fallback) const {
    const double v = num(key, fallback);
    if (v != std::floor(v)) throw ConfigError("config key '" + key + "': not an integer");
    return static_cast<int>(v);
}

bool Config::boolean(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError("config key '" + key + "': not a boolean: " + it->second);
}

std::vector<double> Config::num_list(const std::string& key) const {
    std::vector<double> out;
    auto it = kv_.find(key);
    if (it == kv_.end()) return out;
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

ExperimentConfig ExperimentConfig::load(const Config& c, const std::string& kind) {
    ExperimentConfig e;
    e.params = Params(c.integer("N", 1), c.num("s", 0.5), c.num("m", 1.0), c.num("M", 1.0));
    if (kind != "constants") {
        e.grid = Grid(c.integer("grid.dim", c.integer("N", 1) == 2 ? 2 : 1),
                      c.integer("grid.n", 1024), c.num("grid.L", 40.0));
        if (e.params.N <= 2 && e.grid.dim != e.params.N)
            throw ConfigError("grid.dim must match N for grid experiments");
    }
    e.scheme.t_end = c.num("t_end", c.num("scheme.t_end", 1.0));
    e.scheme.eps_absorption = c.num("eps", c.num("scheme.eps", 0.0));
    e.scheme.dt_init = c.num("scheme.dt_init", 0.0);
    e.scheme.cfl_safety = c.num("scheme.cfl_safety", 0.9);
    e.scheme.adaptive = c.boolean("scheme.adaptive", true);
    e.scheme.mass_drift_tol = c.num("scheme.mass_drift_tol", 1e-6);
    e.scheme.positivity_tol = c.num("scheme.positivity_tol", 1e-8);
    e.scheme.box_tail_frac = c.num("scheme.box_tail_frac", 1e-4);
    e.scheme.checkpoint_t0 = c.num("scheme.checkpoint_t0", 0.0);
    e.scheme.checkpoint_q = c.num("scheme.checkpoint_q", e.scheme.checkpoint_q);
    e.scheme.store_checkpoints = c.boolean("scheme.store_checkpoints", false);
    e.renorm.tau_end = c.num("renorm.tau_end", 60.0);
    e.renorm.settle_tol = c.num("renorm.settle_tol", 1e-8);
    e.renorm.cfl_safety = c.num("renorm.cfl_safety", 0.9);
    e.data_kind = c.str("data.kind", "mollifier");
    e.data_eps = c.num("data.eps", 0.0);
    e.data_width = c.num("data.width", 4.0);
    e.data_path = c.str("data.path", "");
    e.route = c.str("route", "renormalized");
    e.out_dir = c.str("out", ".");
    e.suite = c.str("suite", "all");
    e.seed = static_cast<std::uint64_t>(c.num("seed", 0.0));
    e.workers = c.integer("workers", 1);
    e.sweep_m = c.num_list("sweep.m");

    if (kind == "evolve" || kind == "profile") {
        const Regime reg = classify(e.params);
        const bool dirac_like = e.data_kind == "mollifier" || kind == "profile";
        if (dirac_like && e.params.m <= reg.m_c)
            throw RegimeError(
                "refusing point-mass run: for m <= m_c a point mass does not spread, so no "
                "fundamental solution exists (m=" + std::to_string(e.params.m) +
                ", m_c=" + std::to_string(reg.m_c) + ")");
    }
    if (e.data_kind != "mollifier" && e.data_kind != "box" && e.data_kind != "custom-csv" &&
        e.data_kind != "two-bump")
        throw ConfigError("data.kind must be mollifier | box | custom-csv | two-bump");
    return e;
}

Field make_initial_data(const ExperimentConfig& cfg) {
    const Grid& g = cfg.grid;
    if (cfg.data_kind == "mollifier") {
        const double eps = cfg.data_eps > 0.0 ? cfg.data_eps : 4.0 * g.dx();
        return mollifier_field(g, eps, cfg.params.M);
    }
    if (cfg.data_kind == "box") {
        Field u(g, 0.0);
        const double w = cfg.data_width;
        if (g.dim == 1) {
            for (int i = 0; i < g.n; ++i) u.at(i) = std::abs(g.coord(i)) <= w ? 1.0 : 0.0;
        } else {
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    u.at(i, j) = std::hypot(g.coord(i), g.coord(j)) <= w ? 1.0 : 0.0;
        }
        const double m0 = mass(u);
        for (double& x : u.v) x *= cfg.params.M / m0;
        return u;
    }
    if (cfg.data_kind == "two-bump") {
        const double eps = cfg.data_eps > 0.0 ? cfg.data_eps : cfg.data_width;
        Field a = mollifier_field(g, eps, 0.7 * cfg.params.M);
        Field b = mollifier_field(g, 0.6 * eps, 0.3 * cfg.params.M);
        // Shift the bumps apart (periodic index roll).
        const int da = static_cast<int>(std::round(1.5 * eps / g.dx()));
        const int db = static_cast<int>(std::round(-2.5 * eps / g.dx()));
        Field u(g, 0.0);
        if (g.dim != 1) throw ConfigError("two-bump data is 1-D");
        for (int i = 0; i < g.n; ++i) {
            u.at(i) = a.at(((i - da) % g.n + g.n) % g.n) + b.at(((i - db) % g.n + g.n) % g.n);
        }
        return u;
    }
    if (cfg.data_kind == "custom-csv") {
        std::ifstream in(cfg.data_path);
        if (!in) throw ConfigError("custom-csv: cannot open " + cfg.data_path);
        Field u(cfg.grid, 0.0);
        std::string line;
        std::getline(in, line);  // header
        std::size_t i = 0;
        while (std::getline(in, line) && i < u.v.size()) {
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw ConfigError("custom-csv: expected x,u rows");
            u.v[i++] = std::stod(line.substr(comma + 1));
        }
        if (i != u.v.size()) throw ConfigError("custom-csv: sample count does not match grid");
        return u;
    }
    throw ConfigError("unknown data kind " + cfg.data_kind);
}

}  // namespace fpme
