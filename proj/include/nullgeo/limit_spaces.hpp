#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nullgeo/families.hpp"
#include "nullgeo/geodesic.hpp"

namespace nullgeo {

struct ComponentRef {
    int component = 0;
    int index = 0;  // row in that component's matrix
};

// Metric quotient of a disjoint union of finite metric spaces under a list of
// zero-cost identifications. The quotient matrix is the metric closure of the
// union, so its axioms are exact and it never exceeds component distances.
struct GluedSpace {
    std::vector<DistanceMatrix> components;
    std::vector<std::pair<ComponentRef, ComponentRef>> identifications;
    DistanceMatrix quotient;       // over all points, components concatenated
    std::vector<int> offsets;      // component -> first quotient row

    int row(const ComponentRef& p) const { return offsets[p.component] + p.index; }
};

GluedSpace make_glued_space(std::vector<DistanceMatrix> components,
                            std::vector<std::pair<ComponentRef, ComponentRef>> identifications);

double glued_distance(const GluedSpace& space, const ComponentRef& p, const ComponentRef& q);

struct LimitParams {
    std::vector<double> times;  // dyadic sample times in [0, 1]
    int max_spatial = 140;      // spatial subsample size for slab matrices
    double lambda = 1.2;        // ex34 taxi/profile parameter
    int taxi_grid = 9;          // ex34 square: u samples per time level
    unsigned long long seed = 20260814ULL;
};

// A discretized model of the stated limit of one example family. `times` and
// `slab_rows` describe the slab sample grid (time-major product) a family
// null matrix must use so `limit_correspondence` can map its rows into
// quotient rows.
struct LimitSpace {
    std::string example;
    GluedSpace space;
    std::vector<double> times;
    std::vector<int> slab_rows;     // mesh vertex indices, center and boundary included
    DistanceMatrix flat_spatial;    // flat distances over slab_rows
    double taxi_lambda = 0.0;       // ex34 only
};

// Builds the stated limit space of the example over the given family mesh:
//   ex31/ex32: slab quotient collapsing each boundary circle to a point,
//   ex33: two flat slabs, bubble-copy boundary circles glued to the outer
//         copy's center at equal times,
//   ex34: flat slab with a taxi-metric square (|ds| + lambda |du|) sewn to
//         the center axis along its u = 1 edge.
LimitSpace build_limit_space(const std::string& example, const SpatialMesh& mesh,
                             const LimitParams& params);

// Row map from the slab sample list (times x slab_rows) into quotient rows:
// the natural projection of the family member at index j onto its limit.
std::vector<int> limit_correspondence(const LimitSpace& limit, const SpatialMesh& mesh, double j);

}  // namespace nullgeo
