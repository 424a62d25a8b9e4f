#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nullgeo {

enum class MeshKind { CartesianDisk, PolarDisk };

// Generator parameters. A mesh is a pure function of its spec, so a spec
// round-trips through serialization and `refine` just bumps the level.
struct MeshSpec {
    MeshKind kind = MeshKind::CartesianDisk;
    int level = 0;
    double h0 = 0.3125;  // base target spacing, dyadic so lattice coords stay exact
    std::vector<double> breakpoints;  // interior radii the polar rings must hit
};

// Discretized compact 2-d disk. Vertices carry coordinates in the closed unit
// disk; `cell_weights` partition the coordinate area (they sum to pi exactly
// up to rounding) and are used for all integral quadratures.
struct SpatialMesh {
    int dim = 2;
    MeshSpec spec;
    double target_spacing = 0.0;  // spacing the generator aimed for at this level
    std::vector<double> coords;   // dim doubles per vertex
    std::vector<double> radial;   // |x| per vertex, cached by the generator
    std::vector<std::array<int, 2>> edges;           // undirected, i < j, deduplicated
    std::vector<std::array<int, 2>> boundary_edges;  // consecutive outer-ring pairs
    std::vector<int> boundary_vertices;              // sorted
    std::vector<char> is_boundary;                   // per vertex
    std::vector<double> cell_weights;

    std::size_t vertex_count() const { return radial.size(); }
    const double* vertex(std::size_t v) const { return coords.data() + dim * v; }
};

// Cartesian-core disk: dyadic lattice interior plus an evenly spaced boundary
// ring. Dense short edges keep the graph-metric dilation of Euclidean
// distances below 1.31 percent at every level.
SpatialMesh make_disk_mesh(int level);

// Ring/sector disk adapted to radial profiles: rings hit every breakpoint,
// each profile region gets at least four rings, wide regions (ratio > 8) are
// log-spaced. Sector counts are 8 * 2^k so refinement doubles them exactly.
SpatialMesh make_polar_disk_mesh(int level, const std::vector<double>& breakpoints,
                                 double h0 = 0.3125);

// Same generator one level up. Every vertex of the input appears in the
// output with identical coordinates; embed_map recovers the index mapping.
SpatialMesh refine(const SpatialMesh& mesh);

// coarse vertex index -> fine vertex index; throws if some coarse vertex has
// no exact counterpart.
std::vector<int> embed_map(const SpatialMesh& coarse, const SpatialMesh& fine);

// Rebuild from a spec (used by deserialization and by refine).
SpatialMesh build_mesh(const MeshSpec& spec);

// Structural invariants: connected edge graph, positive weights summing to the
// disk area, boundary flags consistent, radial cache correct. Throws on
// violation with a description.
void validate_mesh(const SpatialMesh& mesh);

}  // namespace nullgeo
