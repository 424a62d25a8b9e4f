#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nullgeo/mesh.hpp"
#include "nullgeo/metric.hpp"

namespace nullgeo {

// Undirected weighted graph in CSR form. Edge lengths come from the midpoint
// metric: |e|_sigma = sqrt(v^T avg(sigma_i, sigma_j) v).
struct EdgeGraph {
    int n = 0;
    std::vector<int> offsets;   // n + 1
    std::vector<int> targets;
    std::vector<double> weights;
    double max_edge = 0.0;
};

EdgeGraph build_edge_graph(const SpatialMesh& mesh, const MetricField& sigma);

// Midpoint-rule length of the segment (u, v); the single source of edge
// weights for every graph built on a mesh.
double edge_length(const SpatialMesh& mesh, const MetricField& sigma, int u, int v);

// Single-source shortest paths, deterministic (ties broken by vertex index).
// Unreachable vertices get +infinity.
std::vector<double> shortest_paths(const EdgeGraph& g, int source);

// Label for a matrix row/column. `time` is NaN for purely spatial points.
struct PointKey {
    int vertex = 0;
    double time = std::numeric_limits<double>::quiet_NaN();

    bool has_time() const { return !std::isnan(time); }
    std::string id() const;
};

// Dense symmetric distance matrix over a list of labeled points. After
// `closure_finalize` the stored values satisfy the metric axioms exactly in
// floating point: d(i,i) = 0, bitwise symmetry, and d(i,k) <= fl(d(i,j) + d(j,k)).
struct DistanceMatrix {
    std::vector<PointKey> points;
    std::vector<double> values;  // n * n row-major

    int n() const { return static_cast<int>(points.size()); }
    double at(int i, int j) const { return values[std::size_t(i) * points.size() + j]; }
    double& at(int i, int j) { return values[std::size_t(i) * points.size() + j]; }
    const double* row(int i) const { return values.data() + std::size_t(i) * points.size(); }
    double* row(int i) { return values.data() + std::size_t(i) * points.size(); }
};

// Min-symmetrize, zero the diagonal, then run min-plus relaxation sweeps to a
// fixpoint. Monotone and bounded below, so the fixpoint is reached after
// finitely many sweeps; throws if a safety cap is exceeded.
void closure_finalize(DistanceMatrix& m);

// Pairwise graph distances between the listed vertices (all vertices when the
// list is empty), finalized. Throws if any pair is unreachable.
DistanceMatrix distance_matrix(const SpatialMesh& mesh, const MetricField& sigma,
                               const std::vector<int>& vertices = {});

double diameter(const DistanceMatrix& m);

// CSV export: header row of point ids, then one row of distances per point.
std::string to_csv(const DistanceMatrix& m);
DistanceMatrix matrix_from_csv(const std::string& csv);

}  // namespace nullgeo
