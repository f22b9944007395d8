#include "fpme/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "fpme/errors.hpp"

namespace fpme {

nlohmann::json check_json(const CheckResult& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["measured"] = r.measured;
    j["expected"] = r.expected;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

nlohmann::json params_json(const Params& p) {
    nlohmann::json j;
    j["N"] = p.N;
    j["s"] = p.s;
    j["m"] = p.m;
    j["M"] = p.M;
    const Regime reg = classify(p);
    j["m_c"] = reg.m_c;
    j["m_1"] = reg.m_1;
    j["regime"] = regime_name(reg.tag);
    try {
        const Exponents e = exponents(p);
        j["alpha"] = e.alpha;
        j["beta"] = e.beta;
    } catch (const DegenerateScaling&) {
        // No exponents at the degenerate point; the regime entry tells why.
    }
    return j;
}

nlohmann::json manifest_json(const RunManifest& man) {
    nlohmann::json j;
    j["params"] = params_json(man.params);
    j["grid"] = {{"dim", man.grid.dim}, {"n", man.grid.n}, {"L", man.grid.L}};
    j["scheme"] = {{"dt_init", man.scheme.dt_init},
                   {"cfl_safety", man.scheme.cfl_safety},
                   {"t_end", man.scheme.t_end},
                   {"eps_absorption", man.scheme.eps_absorption},
                   {"adaptive", man.scheme.adaptive},
                   {"mass_drift_tol", man.scheme.mass_drift_tol},
                   {"positivity_tol", man.scheme.positivity_tol},
                   {"box_tail_frac", man.scheme.box_tail_frac}};
    j["steps"] = man.steps;
    j["clipped_mass"] = man.clipped_mass;
    j["termination"] = man.termination;
    nlohmann::json series = nlohmann::json::array();
    for (const DiagnosticsRow& row : man.series)
        series.push_back({{"t", row.t},
                          {"mass", row.mass},
                          {"supnorm", row.supnorm},
                          {"energy", row.energy},
                          {"minval", row.minval}});
    j["series"] = series;
    return j;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("write_json_file: cannot open " + path);
    out << j.dump(2) << "\n";
}

void write_diagnostics_csv(const RunManifest& man, std::ostream& out) {
    out << "t,mass,supnorm,energy,minval\n";
    char buf[160];
    for (const DiagnosticsRow& r : man.series) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass, r.supnorm,
                      r.energy, r.minval);
        out << buf;
    }
}

}  // namespace fpme
