#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullgeo/causal_grid.hpp"
#include "nullgeo/convergence.hpp"
#include "nullgeo/families.hpp"
#include "nullgeo/limit_spaces.hpp"
#include "nullgeo/swif.hpp"

// Reusable experiment drivers shared by the CLI and the acceptance runner.
// Everything here is deterministic given the seed.

namespace nullgeo {

struct SampleSizes {
    int spatial = 60;    // spatial subsample per mesh
    int times = 5;       // dyadic time levels per slab
    int pairs = 2000;    // pair budget for sup-estimates
};

// Deterministic spatial subsample: always includes the center and a boundary
// spread, fills up with a seeded shuffle of the rest. Sorted output.
std::vector<int> sample_vertices(const SpatialMesh& mesh, int count, std::uint64_t seed);

// count dyadic times spread over [t0, t1] (endpoints included, all exactly
// representable).
std::vector<double> dyadic_times(double t0, double t1, int count);

struct OracleCheckRow {
    SpacetimePoint p, q;
    double formula = 0.0;
    double oracle = 0.0;
    double diff = 0.0;
    double tol = 0.0;
    bool ok = true;
};

struct OracleCheckResult {
    std::vector<OracleCheckRow> rows;
    double max_diff = 0.0;
    double cell = 0.0;      // one grid cell: max reduced edge length
    double rel_tol = 0.0;
    bool pass = true;
    std::string tolerance_provenance;
};

// Cross-check null_distance_static against the space-time graph oracle on
// `pair_count` seeded pairs. Tolerance per pair: rel_tol * formula + cell.
OracleCheckResult oracle_check(const StaticSpacetime& st, int pair_count, std::uint64_t seed,
                               double rel_tol = 0.03, const GridParams& gp = {});

struct UniformRow {
    double j = 0.0;
    double uniform = 0.0;   // sup |dhat_j - dhat_limit| over the sample
    double gh_upper = 0.0;  // half of it
};

// Null-distance uniform comparison of a family ladder against the flat slab
// on the same mesh and sample set.
std::vector<UniformRow> uniform_ladder(const std::string& example,
                                       const std::vector<double>& ladder, int level,
                                       double profile_lambda, const SampleSizes& sizes,
                                       std::uint64_t seed);

struct GhLadderRow {
    double j = 0.0;
    double bound = 0.0;
    double distortion = 0.0;
    double covering = 0.0;
};

// Correspondence GH bound from the family slab to its stated limit space,
// over the ladder.
std::vector<GhLadderRow> gh_to_limit(const std::string& example, const std::vector<double>& ladder,
                                     int level, double profile_lambda, const SampleSizes& sizes,
                                     std::uint64_t seed);

struct HolderRow {
    int level = 0;
    double constant = 0.0;
    double slab_constant = 0.0;  // same fit on slab null distances
    bool unbounded = false;
};

struct HolderResult {
    double alpha = 0.0;
    double p = 0.0;
    double lp_norm = 0.0;   // integral hypothesis value at the top level
    std::vector<HolderRow> rows;
};

// Holder fit of d_{sigma_1} against d_{sigma_0} across refinement levels,
// alpha = (p - n) / p. sigma_1 is the example metric at fixed j; sigma_0 is
// flat.
HolderResult holder_run(const std::string& example, double j, double profile_lambda, double p,
                        int min_level, int max_level, const SampleSizes& sizes,
                        std::uint64_t seed);

struct LowerBoundRow {
    double j = 0.0;
    double violation = 0.0;  // max (dhat_inf - dhat_j)+
    double analytic = 0.0;   // (1 - sqrt(1 - 1/j)) * slab diameter
    double margin = 0.0;
    bool ok = false;
};

// Exact-scaling study: sigma_j = (1 - 1/j) sigma_inf on the flat disk, so the
// violation has the closed form checked against `analytic` plus mesh slack.
std::vector<LowerBoundRow> lower_bound_run(const std::vector<double>& ladder, int level,
                                           const SampleSizes& sizes, std::uint64_t seed);

// Negative control: the same report for a family whose metrics dip below the
// limit somewhere (violation must stay away from 0).
std::vector<LowerBoundRow> lower_bound_family(const std::string& example,
                                              const std::vector<double>& ladder, int level,
                                              double profile_lambda, const SampleSizes& sizes,
                                              std::uint64_t seed);

// SWIF bound table for a family ladder against its flat limit.
std::vector<SwifRow> swif_run(const std::string& example, const std::vector<double>& ladder,
                              int level, double profile_lambda, double lambda, double kappa,
                              const SampleSizes& sizes, std::uint64_t seed);

// Fraction of sampled pairs converged within eps at each rung.
struct PointwiseRow {
    double j = 0.0;
    double fraction = 0.0;
};
std::vector<PointwiseRow> pointwise_run(const std::string& example,
                                        const std::vector<double>& ladder, int level,
                                        double profile_lambda, double eps,
                                        const SampleSizes& sizes, std::uint64_t seed);

}  // namespace nullgeo
