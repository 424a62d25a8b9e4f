#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nullgeo/geodesic.hpp"

namespace nullgeo {

// Sample of a static slab: a time in [t0, t1] and a mesh vertex index.
struct SpacetimePoint {
    double time = 0.0;
    int vertex = 0;
};

// Closed form on a static slab with unit lapse:
//   d(x, y) + max(0, |t - s| - d(x, y))  ==  max(d(x, y), |t - s|).
// Implemented as the max form, which preserves the exact metric axioms of a
// finalized spatial matrix whenever the times are dyadic rationals.
double null_distance_static(double spatial_distance, double t, double s);

// Same, looking the vertices up in a finalized spatial matrix (rows must be
// keyed by mesh vertex; throws if a vertex is missing).
double null_distance_static(const DistanceMatrix& spatial, const SpacetimePoint& p,
                            const SpacetimePoint& q);

// Point of a slab sample list: a time and a row index of the spatial matrix.
struct SlabPoint {
    double time = 0.0;
    int spatial = 0;
};

// Dense null-distance matrix over slab samples; exact axioms inherited from
// the finalized spatial matrix (see null_distance_static).
DistanceMatrix null_matrix(const DistanceMatrix& spatial, const std::vector<SlabPoint>& samples);

// Time-major product of `times` x `rows`.
std::vector<SlabPoint> slab_samples(const std::vector<int>& rows, const std::vector<double>& times);

struct CausalityError : std::runtime_error {
    int segment;
    CausalityError(int seg, const std::string& what) : std::runtime_error(what), segment(seg) {}
};

enum class Orientation { Future, Past };

// Ordered spacetime points with per-segment orientation flags. Segments must
// be causal: the time change dominates the spatial distance of the endpoints
// (up to 1e-9 relative slack), with the sign matching the flag.
struct PiecewiseCausalPath {
    std::vector<SpacetimePoint> points;
    std::vector<Orientation> orientations;  // size points.size() - 1
};

// Sum of |dt| over the segments. A single point has length 0; a zero-time
// segment between distinct vertices raises CausalityError with its index.
double null_length(const PiecewiseCausalPath& path, const DistanceMatrix& spatial);

}  // namespace nullgeo
