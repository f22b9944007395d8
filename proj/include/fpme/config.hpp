#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fpme/evolve.hpp"
#include "fpme/params.hpp"
#include "fpme/selfsim.hpp"

namespace fpme {

// Flat key-value configuration: one `key = value` per line, dotted keys,
// '#' comments.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string str(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;
    double num(const std::string& key, double fallback) const;
    double require_num(const std::string& key) const;
    int integer(const std::string& key, int fallback) const;
    bool boolean(const std::string& key, bool fallback) const;
    std::vector<double> num_list(const std::string& key) const;  // comma separated

    const std::map<std::string, std::string>& items() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

// One experiment as described by a config file.
struct ExperimentConfig {
    Params params;
    Grid grid;
    SchemeConfig scheme;
    RenormOptions renorm;
    std::string data_kind = "mollifier";  // mollifier | box | custom-csv | two-bump
    double data_eps = 0.0;                // 0 selects 4 dx
    double data_width = 4.0;              // box / bump width
    std::string data_path;                // custom-csv source
    std::string route = "renormalized";   // profile route
    std::string out_dir = ".";
    std::string suite = "all";
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<double> sweep_m;

    // Parses and validates; `kind` gates regime compatibility up front.
    static ExperimentConfig load(const Config& c, const std::string& kind);
};

// Initial data construction shared by the CLI and tests.
Field make_initial_data(const ExperimentConfig& cfg);

}  // namespace fpme
