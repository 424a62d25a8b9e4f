#include "nullgeo/metric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nullgeo/kernels.hpp"
#include "nullgeo/smallmat.hpp"

namespace nullgeo {

MetricField MetricField::constant(const SpatialMesh& mesh, const double* tensor) {
    MetricField f;
    f.dim = mesh.dim;
    const std::size_t block = std::size_t(f.dim) * f.dim;
    f.values.resize(block * mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
        for (std::size_t k = 0; k < block; ++k) f.values[v * block + k] = tensor[k];
    return f;
}

MetricField MetricField::euclidean(const SpatialMesh& mesh) {
    const double eye[4] = {1.0, 0.0, 0.0, 1.0};
    return constant(mesh, eye);
}

MetricField MetricField::conformal_euclidean(const SpatialMesh& mesh,
                                             const std::vector<double>& factor) {
    if (factor.size() != mesh.vertex_count())
        throw std::invalid_argument("conformal factor size mismatch");
    MetricField f;
    f.dim = mesh.dim;
    f.values.assign(std::size_t(f.dim) * f.dim * mesh.vertex_count(), 0.0);
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const double c2 = factor[v] * factor[v];
        double* t = f.at(v);
        for (int i = 0; i < f.dim; ++i) t[i * f.dim + i] = c2;
    }
    return f;
}

Lapse Lapse::one(const SpatialMesh& mesh) {
    Lapse l;
    l.values.assign(mesh.vertex_count(), 1.0);
    return l;
}

StaticSpacetime conformal_reduce(const StaticSpacetime& st) {
    StaticSpacetime out;
    out.t0 = st.t0;
    out.t1 = st.t1;
    out.mesh = st.mesh;
    out.sigma = st.sigma;
    out.lapse.values.assign(st.lapse.values.size(), 1.0);
    const std::size_t block = std::size_t(st.sigma.dim) * st.sigma.dim;
    for (std::size_t v = 0; v < st.lapse.values.size(); ++v) {
        // Multiplying by a precomputed reciprocal (instead of dividing by
        // h^2 = h*h) makes the second application an exact multiply by 1.0,
        // so reduction is idempotent at the bit level.
        const double inv = 1.0 / st.lapse.values[v];
        double* t = out.sigma.values.data() + v * block;
        for (std::size_t k = 0; k < block; ++k) t[k] = t[k] * inv * inv;
    }
    return out;
}

double volume(const SpatialMesh& mesh, const MetricField& sigma) {
    const std::size_t n = mesh.vertex_count();
    if (sigma.vertex_count() != n) throw std::invalid_argument("metric field size mismatch");
    std::vector<double> dens(n);
    for (std::size_t v = 0; v < n; ++v) {
        try {
            dens[v] = smallmat::sqrt_det_spd(sigma.dim, sigma.at(v));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("metric not positive definite at vertex " +
                                        std::to_string(v));
        }
    }
    return kernels::active().weighted_sum(dens.data(), mesh.cell_weights.data(), n);
}

BoundaryArea boundary_area(const SpatialMesh& mesh, const MetricField& sigma) {
    BoundaryArea out;
    if (mesh.boundary_edges.empty()) {
        out.empty_boundary = true;
        return out;
    }
    double total = 0.0;
    for (auto& e : mesh.boundary_edges) {
        const double vx = mesh.coords[2 * e[1]] - mesh.coords[2 * e[0]];
        const double vy = mesh.coords[2 * e[1] + 1] - mesh.coords[2 * e[0] + 1];
        const double* a = sigma.at(e[0]);
        const double* b = sigma.at(e[1]);
        double avg[4];
        for (int k = 0; k < 4; ++k) avg[k] = 0.5 * (a[k] + b[k]);
        const double vec[2] = {vx, vy};
        total += std::sqrt(smallmat::quad_form(2, avg, vec));
    }
    out.value = total;
    return out;
}

double lp_tensor_norm(const SpatialMesh& mesh, const MetricField& g1, const MetricField& g0,
                      double p) {
    const std::size_t n = mesh.vertex_count();
    if (g1.vertex_count() != n || g0.vertex_count() != n)
        throw std::invalid_argument("metric field size mismatch");
    if (!(p > 0.0)) throw std::invalid_argument("lp exponent must be positive");
    std::vector<double> dens(n);
    for (std::size_t v = 0; v < n; ++v) {
        double lam, det0;
        try {
            lam = smallmat::max_gen_eigenvalue(g0.dim, g1.at(v), g0.at(v));
            det0 = smallmat::sqrt_det_spd(g0.dim, g0.at(v));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("reference metric not positive definite at vertex " +
                                        std::to_string(v));
        }
        dens[v] = std::pow(lam, 0.5 * p) * det0;
    }
    return kernels::active().weighted_sum(dens.data(), mesh.cell_weights.data(), n);
}

void validate_spacetime(const StaticSpacetime& st) {
    if (!st.mesh) throw std::invalid_argument("spacetime has no mesh");
    const std::size_t n = st.mesh->vertex_count();
    if (st.sigma.vertex_count() != n || st.lapse.values.size() != n)
        throw std::invalid_argument("spacetime field sizes disagree with the mesh");
    if (!(st.t1 > st.t0)) throw std::invalid_argument("slab needs t1 > t0");
    for (std::size_t v = 0; v < n; ++v) {
        if (!(st.lapse.values[v] > 0.0))
            throw std::invalid_argument("lapse not positive at vertex " + std::to_string(v));
        try {
            smallmat::sqrt_det_spd(st.sigma.dim, st.sigma.at(v));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("spatial metric not positive definite at vertex " +
                                        std::to_string(v));
        }
        const double* t = st.sigma.at(v);
        if (!(t[0] > 0.0))
            throw std::invalid_argument("spatial metric not positive definite at vertex " +
                                        std::to_string(v));
    }
}

}  // namespace nullgeo
