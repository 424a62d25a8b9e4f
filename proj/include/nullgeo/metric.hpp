#pragma once

#include <memory>
#include <vector>

#include "nullgeo/mesh.hpp"

namespace nullgeo {

// Per-vertex symmetric 2-tensor field (the spatial metric). Row-major n*n
// block per vertex.
struct MetricField {
    int dim = 2;
    std::vector<double> values;

    double* at(std::size_t v) { return values.data() + std::size_t(dim) * dim * v; }
    const double* at(std::size_t v) const { return values.data() + std::size_t(dim) * dim * v; }
    std::size_t vertex_count() const { return values.size() / (std::size_t(dim) * dim); }

    static MetricField constant(const SpatialMesh& mesh, const double* tensor);
    static MetricField euclidean(const SpatialMesh& mesh);
    // f(r)^2 * delta for a scalar radial factor evaluated per vertex.
    static MetricField conformal_euclidean(const SpatialMesh& mesh,
                                           const std::vector<double>& factor);
};

// Per-vertex lapse h > 0.
struct Lapse {
    std::vector<double> values;
    static Lapse one(const SpatialMesh& mesh);
};

// Static product slab t in [t0, t1] with line element -h^2 dt^2 + sigma.
struct StaticSpacetime {
    double t0 = 0.0;
    double t1 = 1.0;
    std::shared_ptr<const SpatialMesh> mesh;
    MetricField sigma;
    Lapse lapse;
};

// Divide sigma by h^2 pointwise and set the lapse to one. Idempotent at the
// bit level: reducing a reduced slab multiplies every entry by exactly 1.0.
StaticSpacetime conformal_reduce(const StaticSpacetime& st);

// Riemannian volume integral(sqrt(det sigma)) over the disk.
double volume(const SpatialMesh& mesh, const MetricField& sigma);

struct BoundaryArea {
    double value = 0.0;
    bool empty_boundary = false;
};

// Induced measure of the boundary ring: sum of edge lengths of the boundary
// polygon under sigma restricted to the tangential direction.
BoundaryArea boundary_area(const SpatialMesh& mesh, const MetricField& sigma);

// integral(lambda_max(g0^{-1} g1)^{p/2} dvol_{g0}), the L^p comparison used
// by volume-convergence diagnostics.
double lp_tensor_norm(const SpatialMesh& mesh, const MetricField& g1, const MetricField& g0,
                      double p);

// Throws with the offending vertex index when sigma is not positive definite
// somewhere or the lapse is not strictly positive.
void validate_spacetime(const StaticSpacetime& st);

}  // namespace nullgeo
