#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fpme/evolve.hpp"
#include "fpme/params.hpp"

namespace fpme {

// One verdict: every emitted number carries its expectation and tolerance.
struct CheckResult {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;
};

nlohmann::json check_json(const CheckResult& r);

// Params echoed with the derived read-only quantities.
nlohmann::json params_json(const Params& p);

nlohmann::json manifest_json(const RunManifest& man);

void write_json_file(const nlohmann::json& j, const std::string& path);

// Diagnostics CSV: t,mass,supnorm,energy (+minval).
void write_diagnostics_csv(const RunManifest& man, std::ostream& out);

}  // namespace fpme
