#pragma once

#include <utility>
#include <vector>

#include "nullgeo/geodesic.hpp"
#include "nullgeo/mesh.hpp"
#include "nullgeo/metric.hpp"

namespace nullgeo {

// sup over pairs of |d1 - d2|. The matrices must be over the same point list.
double uniform_distance(const DistanceMatrix& a, const DistanceMatrix& b);

// Gromov-Hausdorff upper bound from uniform closeness of two metrics on the
// same point set: half the sup difference.
double gh_upper_from_uniform(const DistanceMatrix& a, const DistanceMatrix& b);

struct GhMapBound {
    double bound = 0.0;
    double distortion = 0.0;        // sup |d_src(x,y) - d_dst(f x, f y)|
    double covering_radius = 0.0;   // sup_z d_dst(z, image)
};

// Gromov-Hausdorff upper bound through an explicit map f: src -> dst given as
// an index list: distortion / 2 + covering radius. Pairing x with the points
// within the covering radius of f(x) gives a correspondence that distorts by
// at most distortion + 2 * covering radius.
GhMapBound gh_upper_via_map(const DistanceMatrix& src, const DistanceMatrix& dst,
                            const std::vector<int>& map);

struct HolderFit {
    double constant = 0.0;   // smallest C with d1 <= C * d0^alpha over all pairs
    std::pair<int, int> worst_pair{0, 0};
    bool unbounded = false;  // some pair has d0 = 0 but d1 > 0
};

// Fits the one-sided Holder comparison d1(x,y) <= C d0(x,y)^alpha.
HolderFit holder_fit(const DistanceMatrix& d0, const DistanceMatrix& d1, double alpha);

struct LowerBoundReport {
    double max_violation = 0.0;  // sup over pairs of (d_expected_floor - d_j), clipped at 0
    double margin = 0.0;
    bool ok = false;
    std::pair<int, int> worst_pair{0, 0};
};

// Checks d_j >= floor pointwise with an additive margin, reporting the worst
// deficit. `floor_matrix` is typically a scaled copy of the limit matrix.
LowerBoundReport lower_bound_check(const DistanceMatrix& d_j, const DistanceMatrix& floor_matrix,
                                   double margin);

struct PointwiseReport {
    std::vector<double> fraction_within;  // per matrix in the sequence
    double final_fraction = 0.0;
};

// Fraction of sampled pairs with |d_j - d_limit| <= eps, per element of the
// sequence. Pairs are row/column index pairs into the matrices.
PointwiseReport pointwise_report(const std::vector<const DistanceMatrix*>& seq,
                                 const DistanceMatrix& limit,
                                 const std::vector<std::pair<int, int>>& pairs, double eps);

struct GoodSetResult {
    std::vector<int> members;       // row indices into the matrices
    double delta_hat = 0.0;         // smallest schedule entry that met the target
    double deviation_bound = 0.0;   // realized sup deviation on members
    double excess_volume = 0.0;     // metric_j volume carried by removed vertices
    double target_excess = 0.0;     // limit_volume / kappa + |vol_j - limit_volume|
    bool feasible = false;
};

// Greedy extraction of a subset on which every pairwise deviation
// |d_j - d_inf| stays below 2 lambda + 2 delta_hat. The point with the most
// violating pairs is removed first (ties to the lower index). delta_hat grows
// through {0, lambda/8, lambda/4, lambda/2, lambda} until the removed volume
// fits under the target; if even delta_hat = lambda fails, the result carries
// feasible = false. Matrix rows must reference mesh vertices so removed rows
// can be charged their cell volume under metric_j. `limit_volume` is the
// total volume under the limit metric the target is measured against.
GoodSetResult good_set(const SpatialMesh& mesh, const DistanceMatrix& d_j,
                       const DistanceMatrix& d_inf, double lambda, double kappa,
                       const MetricField& metric_j, double limit_volume);

}  // namespace nullgeo
