#pragma once

#include <memory>
#include <vector>

#include "nullgeo/causal_grid.hpp"
#include "nullgeo/convergence.hpp"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric.hpp"

namespace nullgeo {

// 2^n / omega_n with omega_n the volume of the Euclidean unit n-ball.
double area_factor(int n);

struct SlabMeasures {
    double V = 0.0;  // (n+1)-volume overestimate: volume * (t1 - t0)
    double A = 0.0;  // boundary overestimate: side * (t1 - t0) + two caps
    bool empty_boundary = false;
};

// Product overestimates of the slab's Hausdorff measures under the null
// distance; expects a reduced slab (unit lapse).
SlabMeasures hausdorff_overestimates(const StaticSpacetime& slab);

struct FlatBoundInputs {
    int n = 2;          // spatial dimension
    double V = 0.0;     // bound on the (n+1)-measure of the slab
    double Vp = 0.0;    // bound on the (n+1)-measure outside the good slab
    double A = 0.0;     // bound on the n-measure of the slab boundary
    double H = 0.0;     // gluing height
    double delta = 0.0; // distance defect; requires H >= delta
};

// 2 C_{n+1} Vp + C_{n+2} H V + C_{n+1} H A. Linear in H at fixed volumes.
double flat_bound(const FlatBoundInputs& in);

// Discretized L x [0, H] stack glued to a copy of L at the top along a vertex
// set W. Height 0 carries the g1 causal structure, all higher slices carry
// g2. Curves reaching the copy must cross W at height H; height moves cost
// |dh|, in-slice moves cost the slice's null-distance increments.
struct ZSpace {
    std::shared_ptr<const SpatialMesh> mesh;
    double t0 = 0.0, t1 = 1.0;
    double dtau = 0.0;
    int levels = 0;
    double height = 0.0;
    double dh = 0.0;
    int height_steps = 0;
    std::vector<int> w_vertices;     // sorted
    std::vector<char> in_w;

    // node layout: slice s in [0, height_steps] holds levels*V nodes, the
    // glued copy appends nodes only for vertices outside W.
    std::vector<std::size_t> offsets;
    std::vector<int> targets;
    std::vector<double> weights;
    std::vector<int> copy_node_of_vertex;  // -1 for W vertices
    std::int64_t base_nodes = 0;

    int node(int slice, int level, int vertex) const;
    int copy_node(int level, int vertex) const;  // throws for W vertices
    int level_of_time(double t) const;
};

// g1 and g2 are slabs over the same mesh and time interval; both are reduced
// internally. `w_vertices` selects the gluing set.
ZSpace build_z_space(const StaticSpacetime& g1, const StaticSpacetime& g2,
                     const std::vector<int>& w_vertices, double height,
                     const GridParams& params = {});

struct ZPoint {
    double time = 0.0;
    int vertex = 0;
    double h = 0.0;      // height in [0, height]
    bool in_copy = false;  // top copy of L (only meaningful with h = height)
};

double z_distance(const ZSpace& z, const ZPoint& p, const ZPoint& q);

struct SwifCase {
    double j = 2.0;
    StaticSpacetime slab;
};

struct SwifRow {
    double j = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double delta_hat = 0.0;
    double H = 0.0;
    double V = 0.0;
    double Vp = 0.0;
    double A = 0.0;
    double bound = 0.0;
    // diagnostics (JSON only, not part of the CSV table)
    double excess_measured = 0.0;
    double volume_ratio = 0.0;  // volume(rescaled j) / volume(limit)
    double floor_value = 0.0;   // bound with Vp at the kappa floor and delta_hat = 0
    bool hypothesis_ok = true;  // sigma_j >= (1 - 1/j) sigma_inf held numerically
    bool feasible = true;
};

// Per-j upper-bound table: rescale sigma_hat_j = (1 - 1/j)^{-1} sigma_j,
// extract the good set against the limit, set H = 4 lambda + 4 delta_hat and
// delta = H / 2, take V and A from the rescaled slab's overestimates and
// Vp = (vol_limit / kappa + |vol_hat_j - vol_limit|) * (t1 - t0),
// then evaluate flat_bound. Rows keep good-set infeasibility visible instead
// of throwing so negative controls can report it.
std::vector<SwifRow> swif_pipeline(const std::vector<SwifCase>& cases,
                                   const StaticSpacetime& limit, double lambda, double kappa);

}  // namespace nullgeo
