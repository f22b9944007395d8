#pragma once

#include <string>
#include <vector>

#include "fpme/report.hpp"

namespace fpme {

// Named acceptance suites. "all" runs every criterion. Each check returns one
// or more verdicts; plots and reports land in out_dir when non-empty.
std::vector<CheckResult> run_acceptance(const std::string& suite, const std::string& out_dir);

std::vector<std::string> acceptance_suites();

}  // namespace fpme
