#pragma once

#include <string>
#include <vector>

#include "nullgeo/config.hpp"

namespace nullgeo {

// Executes the configured pipeline and writes <out>/<pipeline>.csv and
// <out>/<pipeline>.json (CSV = plot-ready table, JSON = full record with the
// resolved config echoed and every tolerance tagged with the policy that set
// it). The NULLGEO_OUT_DIR environment variable overrides cfg.out_dir.
// Returns the process exit code: 0 success, 2 when a checked invariant fails
// (oracle tolerance exceeded, infeasible good set, resource cap).
int run_experiment(const ExperimentConfig& cfg);

// Low-level writers shared with tests: rows of already formatted cells.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

}  // namespace nullgeo
