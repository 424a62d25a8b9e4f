#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullgeo/experiments.hpp"

namespace nullgeo {

// One experiment run: which family, which pipeline, and all knobs. Loaded
// from a JSON document; command-line flags override individual fields.
struct ExperimentConfig {
    std::string example = "ex31-space-collapse";
    std::string pipeline = "uniform";  // uniform | gh-to-limit | holder |
                                       // lower-bound | swif | oracle-check | pointwise
    std::vector<double> j_ladder;      // empty -> per-example default ladder
    int level = 1;
    SampleSizes samples;
    double lambda = 0.05;          // good-set deviation budget
    double kappa = 100.0;          // good-set volume parameter
    double alpha = 0.5;            // Holder exponent
    double p = 4.0;                // integral exponent for holder runs
    double profile_lambda = 1.2;   // spline shape parameter
    double eps = 0.05;             // pointwise convergence tolerance
    int oracle_pairs = 50;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;  // mandatory: validate() flags absence

    std::string metric = "";  // oracle-check: "flat" to run on the flat slab
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);  // resolved echo

bool is_pipeline_id(const std::string& name);

// Range/schema diagnostics without executing anything. Empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Default ladders: {10, 20, 50, 100} for ex31/ex32/ex33, {100, 1000, 10000}
// for ex34.
std::vector<double> default_ladder(const std::string& example);

}  // namespace nullgeo
