#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/null_distance.hpp"

namespace nullgeo {

struct GridParams {
    // Time-step target as a fraction of the max spatial edge length. The
    // level count is rounded up to a power of two, which keeps the step
    // dyadic (exact |dt| arithmetic) and an exact divisor of the dyadic
    // lattice spacings. Smaller steps sharpen the oracle near the light
    // cone; 1/16 keeps marginal-pair overshoot well under one cell.
    double dtau_factor = 1.0 / 16.0;
    // Pin the interval count directly (testing hook, e.g. to compare grids
    // of different metrics edge for edge). 0 means derive from dtau_factor.
    int force_intervals = 0;
    std::int64_t max_nodes = 2'000'000;
};

// Space-time graph for the independent null-distance estimate. Nodes are
// (time level, vertex) pairs on a dyadic time ladder; undirected edges are
//   vertical:  (k, v) -- (k+1, v)            weight dtau
//   jump:      (k, v) -- (k +- c, w)         weight c * dtau, c = ceil(len/dtau)
//   tent:      (k, v) -- (k, w)              weight len (needs len/2 headroom)
// Jump edges are causal by construction, tents split into an up and a down
// causal leg inside the slab, so every graph path length bounds the true null
// distance from above while max(d_sigma, |dt|) bounds it from below.
struct SpacetimeGrid {
    std::shared_ptr<const SpatialMesh> mesh;
    double t0 = 0.0, t1 = 1.0;
    double dtau = 0.0;
    int levels = 0;  // number of time levels = K + 1, dtau = (t1 - t0) / K

    std::vector<std::size_t> offsets;
    std::vector<int> targets;  // node id = level * V + vertex
    std::vector<double> weights;

    // Spatial pieces kept for causal classification queries.
    std::vector<double> edge_lengths;  // per mesh edge, reduced metric
    EdgeGraph spatial;

    std::int64_t node_count() const { return std::int64_t(levels) * std::int64_t(mesh->vertex_count()); }
    int node_of(int level, int vertex) const {
        return level * static_cast<int>(mesh->vertex_count()) + vertex;
    }
    int level_of_time(double t) const;  // throws unless t sits on the ladder
};

// Builds the grid from a slab. The slab is conformally reduced internally, so
// the grid of a slab and of its reduction agree bit for bit.
SpacetimeGrid build_spacetime_grid(const StaticSpacetime& st, const GridParams& params = {});

// Dijkstra over a CSR adjacency with size_t offsets, shared by the spacetime
// grid and the gluing stack. Ties break by node id; unreachable = +infinity.
std::vector<double> csr_shortest_paths(const std::vector<std::size_t>& offsets,
                                       const std::vector<int>& targets,
                                       const std::vector<double>& weights, int source);

// Shortest space-time graph path between two on-ladder samples, floored at
// |dt|. Meets the closed form exactly for spacelike pairs and overshoots by
// at most a few cells for marginal causal ones.
double null_distance_oracle(const SpacetimeGrid& grid, const SpacetimePoint& p,
                            const SpacetimePoint& q);

// Matrix of oracle values over slab samples: raw graph distances are closed
// to exact axioms first, then floored at the exact |dt| matrix (which keeps
// the axioms exact; see null_distance_static).
DistanceMatrix oracle_matrix(const SpacetimeGrid& grid, const std::vector<SpacetimePoint>& samples);

enum class CausalClass { Future, Past, Spacelike };

struct CausalRelation {
    CausalClass cls = CausalClass::Spacelike;
    // Set when |dt| is within one grid cell plus the graph dilation margin of
    // the spatial distance; such pairs sit too close to the discrete light
    // cone to classify reliably.
    bool marginal = false;
    double spatial_distance = 0.0;
    double dt = 0.0;
};

// Classifies q relative to p under the reduced metric: q in the future of p
// when dt >= d_sigma(p, q), in the past when -dt >= d_sigma, else spacelike.
CausalRelation causal_relation(const SpacetimeGrid& grid, const SpacetimePoint& p,
                               const SpacetimePoint& q);

}  // namespace nullgeo
