#pragma once

// Experiment harness behind the CLI: named experiments (configured through
// flat config files) writing a results directory with JSON manifest, CSVs and
// SVG plots; and the bounds-audit battery over canned trajectories.

#include <iosfwd>
#include <string>

#include "mrsle/config_file.hpp"

namespace mrsle {

// exit codes: 0 ok, 1 assertion failure, 2 config error, 3 numerical abort
int run_experiment(const Config& cfg, const std::string& out_dir);

// Pass/fail table over the canned trajectory battery; returns 0 iff all
// gating rows pass. The MRSLE_AUDIT_INJECT=sigma_perturb hook deliberately
// corrupts the capacity data to exercise the failure path.
int run_audit(std::ostream& os);

}  // namespace mrsle
