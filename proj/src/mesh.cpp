#include "nullgeo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace nullgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Proximity radius in units of local spacing. 3.17 picks up lattice
// directions through (3,1), which caps the graph dilation of Euclidean
// distances near 1.3 percent.
constexpr double kConnFactor = 3.17;
constexpr int kMaxLevel = 7;
constexpr std::size_t kMaxVertices = 400000;

double ring_angle(int m, int s) {
    // Evaluated so a vertex keeps the identical angle bits after the sector
    // count doubles: m/s and 2m/2s round to the same double.
    return (2.0 * kPi) * (double(m) / double(s));
}

struct EdgeCollector {
    std::vector<std::array<int, 2>> edges;
    void add(int a, int b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        edges.push_back({a, b});
    }
    void finish(SpatialMesh& mesh) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        mesh.edges = std::move(edges);
    }
};

// All pairs within max(reach[u], reach[v])... no: within min of the two
// per-vertex radii, via a uniform bucket grid sized by the largest radius.
void proximity_edges(const SpatialMesh& mesh, const std::vector<double>& radius,
                     EdgeCollector& out) {
    const std::size_t n = mesh.vertex_count();
    double rmax = 0.0;
    for (double r : radius) rmax = std::max(rmax, r);
    if (rmax <= 0.0) throw std::logic_error("proximity radius not positive");
    const double cell = rmax;
    const int width = int(std::floor(2.0 / cell)) + 3;
    const auto bucket = [&](double x, double y) {
        int bx = int(std::floor((x + 1.0) / cell)) + 1;
        int by = int(std::floor((y + 1.0) / cell)) + 1;
        return by * width + bx;
    };
    std::unordered_map<int, std::vector<int>> grid;
    grid.reserve(n / 2);
    for (std::size_t v = 0; v < n; ++v)
        grid[bucket(mesh.coords[2 * v], mesh.coords[2 * v + 1])].push_back(int(v));
    for (std::size_t v = 0; v < n; ++v) {
        const double x = mesh.coords[2 * v], y = mesh.coords[2 * v + 1];
        const int bx = int(std::floor((x + 1.0) / cell)) + 1;
        const int by = int(std::floor((y + 1.0) / cell)) + 1;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                auto it = grid.find((by + dy) * width + (bx + dx));
                if (it == grid.end()) continue;
                for (int u : it->second) {
                    if (u <= int(v)) continue;
                    const double r = std::min(radius[v], radius[u]);
                    const double ddx = mesh.coords[2 * u] - x;
                    const double ddy = mesh.coords[2 * u + 1] - y;
                    if (ddx * ddx + ddy * ddy <= r * r) out.add(int(v), u);
                }
            }
        }
    }
}

void check_caps(std::size_t vertices) {
    if (vertices > kMaxVertices)
        throw std::length_error("mesh vertex cap exceeded (" + std::to_string(vertices) + " > " +
                                std::to_string(kMaxVertices) + "); lower the refinement level");
}

SpatialMesh build_cartesian(const MeshSpec& spec) {
    if (spec.level < 0 || spec.level > kMaxLevel)
        throw std::invalid_argument("refinement level out of range [0, 7]");
    const double h = spec.h0 / double(1 << spec.level);
    const double margin = 1.0 - 0.35 * h;
    SpatialMesh mesh;
    mesh.spec = spec;
    mesh.target_spacing = h;

    const int nmax = int(std::floor(1.0 / h)) + 1;
    for (int iy = -nmax; iy <= nmax; ++iy) {
        for (int ix = -nmax; ix <= nmax; ++ix) {
            const double x = double(ix) * h, y = double(iy) * h;
            const double r = std::hypot(x, y);
            if (r <= margin) {
                mesh.coords.push_back(x);
                mesh.coords.push_back(y);
                mesh.radial.push_back(r);
            }
        }
    }
    const int interior = int(mesh.radial.size());
    const int ring = 24 * (1 << spec.level);
    for (int m = 0; m < ring; ++m) {
        const double th = ring_angle(m, ring);
        mesh.coords.push_back(std::cos(th));
        mesh.coords.push_back(std::sin(th));
        mesh.radial.push_back(1.0);
    }
    check_caps(mesh.vertex_count());

    mesh.is_boundary.assign(mesh.vertex_count(), 0);
    for (int m = 0; m < ring; ++m) {
        const int v = interior + m;
        mesh.is_boundary[v] = 1;
        mesh.boundary_vertices.push_back(v);
        mesh.boundary_edges.push_back(
            {std::min(v, interior + (m + 1) % ring), std::max(v, interior + (m + 1) % ring)});
    }

    EdgeCollector collector;
    std::vector<double> reach(mesh.vertex_count(), kConnFactor * h);
    proximity_edges(mesh, reach, collector);
    for (auto& be : mesh.boundary_edges) collector.add(be[0], be[1]);
    collector.finish(mesh);

    // Interior cells: midpoint-sampled intersection of the h-square with the
    // disk. Boundary ring: equal split of the remaining sliver area.
    mesh.cell_weights.assign(mesh.vertex_count(), 0.0);
    double covered = 0.0;
    const int sub = 8;
    for (int v = 0; v < interior; ++v) {
        const double x = mesh.coords[2 * v], y = mesh.coords[2 * v + 1];
        int inside = 0;
        for (int a = 0; a < sub; ++a) {
            for (int b = 0; b < sub; ++b) {
                const double px = x + ((a + 0.5) / sub - 0.5) * h;
                const double py = y + ((b + 0.5) / sub - 0.5) * h;
                if (px * px + py * py <= 1.0) ++inside;
            }
        }
        mesh.cell_weights[v] = h * h * double(inside) / double(sub * sub);
        covered += mesh.cell_weights[v];
    }
    const double sliver = (kPi - covered) / double(ring);
    if (!(sliver > 0.0)) throw std::logic_error("interior quadrature overflowed the disk area");
    for (int m = 0; m < ring; ++m) mesh.cell_weights[interior + m] = sliver;
    return mesh;
}

// Ring radii for a polar spec: each region between consecutive anchors gets
// at least four rings, linearly spaced, or log spaced when the radius ratio
// exceeds 8. `level` midpoint-insertion passes refine the list; existing
// radii are left untouched so vertex embedding across levels is exact.
std::vector<double> polar_ring_radii(const MeshSpec& spec) {
    std::vector<double> anchors{0.0};
    for (double b : spec.breakpoints) anchors.push_back(b);
    anchors.push_back(1.0);
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end(),
                              [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
                  anchors.end());
    if (anchors.front() < 0.0 || anchors.back() != 1.0)
        throw std::invalid_argument("polar breakpoints must lie in (0, 1)");

    std::vector<double> radii{0.0};
    for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
        const double a = anchors[k], b = anchors[k + 1];
        if (a > 0.0 && b / a > 8.0) {
            const int n = std::max(4, int(std::ceil(std::log(b / a) / 0.3)));
            for (int i = 1; i <= n; ++i)
                radii.push_back(i == n ? b : a * std::pow(b / a, double(i) / n));
        } else {
            const int n = std::max(4, int(std::ceil((b - a) / spec.h0)));
            for (int i = 1; i <= n; ++i) radii.push_back(i == n ? b : a + (b - a) * i / n);
        }
    }
    for (int pass = 0; pass < spec.level; ++pass) {
        std::vector<double> finer;
        finer.reserve(radii.size() * 2);
        for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
            const double r1 = radii[i], r2 = radii[i + 1];
            finer.push_back(r1);
            finer.push_back((r1 > 0.0 && r2 / r1 > 2.0) ? std::sqrt(r1 * r2) : 0.5 * (r1 + r2));
        }
        finer.push_back(radii.back());
        radii = std::move(finer);
    }
    return radii;  // radii[0] == 0 is the center, radii.back() == 1
}

int sector_count(double r, double h0, int level) {
    if (r <= 0.0) return 8 << level;
    const double ideal = 2.0 * kPi * r / (8.0 * h0);
    int k = ideal > 1.0 ? int(std::llround(std::log2(ideal))) : 0;
    if (k < 0) k = 0;
    return (8 << k) << level;
}

SpatialMesh build_polar(const MeshSpec& spec) {
    if (spec.level < 0 || spec.level > kMaxLevel)
        throw std::invalid_argument("refinement level out of range [0, 7]");
    for (double b : spec.breakpoints)
        if (!(b > 0.0 && b < 1.0))
            throw std::invalid_argument("polar breakpoints must lie in (0, 1)");

    SpatialMesh mesh;
    mesh.spec = spec;
    mesh.target_spacing = spec.h0 / double(1 << spec.level);

    const std::vector<double> radii = polar_ring_radii(spec);
    const int nrings = int(radii.size()) - 1;  // excluding the center entry

    std::vector<int> ring_first(nrings + 1, 0);  // ring index (1-based) -> first vertex
    std::vector<int> ring_sectors(nrings + 1, 0);
    mesh.coords = {0.0, 0.0};
    mesh.radial = {0.0};
    for (int k = 1; k <= nrings; ++k) {
        const double r = radii[k];
        const int s = sector_count(r, spec.h0, spec.level);
        ring_first[k] = int(mesh.radial.size());
        ring_sectors[k] = s;
        for (int m = 0; m < s; ++m) {
            const double th = ring_angle(m, s);
            mesh.coords.push_back(r * std::cos(th));
            mesh.coords.push_back(r * std::sin(th));
            mesh.radial.push_back(r);
        }
    }
    check_caps(mesh.vertex_count());

    EdgeCollector collector;
    // center fan
    for (int m = 0; m < ring_sectors[1]; ++m) collector.add(0, ring_first[1] + m);
    for (int k = 1; k <= nrings; ++k) {
        const int s = ring_sectors[k], first = ring_first[k];
        for (int m = 0; m < s; ++m) collector.add(first + m, first + (m + 1) % s);
        if (k < nrings) {
            const int sn = ring_sectors[k + 1], firstn = ring_first[k + 1];
            const int ratio = sn / s;  // sector ladder only grows outward
            for (int m = 0; m < s; ++m) {
                const int t = m * ratio;
                collector.add(first + m, firstn + t);
                collector.add(first + m, firstn + (t + 1) % sn);
            }
        }
    }
    // local spacing: the larger of the arc step and the adjacent ring gaps
    std::vector<double> spacing(mesh.vertex_count(), radii[1]);
    for (int k = 1; k <= nrings; ++k) {
        const double arc = 2.0 * kPi * radii[k] / ring_sectors[k];
        double gap = radii[k] - radii[k - 1];
        if (k < nrings) gap = std::max(gap, radii[k + 1] - radii[k]);
        const double s = std::max(arc, gap);
        for (int m = 0; m < ring_sectors[k]; ++m) spacing[ring_first[k] + m] = s;
    }
    std::vector<double> reach(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) reach[v] = kConnFactor * spacing[v];
    proximity_edges(mesh, reach, collector);

    mesh.is_boundary.assign(mesh.vertex_count(), 0);
    {
        const int s = ring_sectors[nrings], first = ring_first[nrings];
        for (int m = 0; m < s; ++m) {
            const int v = first + m;
            mesh.is_boundary[v] = 1;
            mesh.boundary_vertices.push_back(v);
            const int w = first + (m + 1) % s;
            mesh.boundary_edges.push_back({std::min(v, w), std::max(v, w)});
            collector.add(v, w);
        }
    }
    collector.finish(mesh);

    // Exact coordinate-area partition: annulus between radius midpoints,
    // split evenly over the ring's sectors. Telescopes to pi.
    mesh.cell_weights.assign(mesh.vertex_count(), 0.0);
    mesh.cell_weights[0] = kPi * (0.5 * radii[1]) * (0.5 * radii[1]);
    for (int k = 1; k <= nrings; ++k) {
        const double lo = 0.5 * (radii[k - 1] + radii[k]);
        const double hi = (k == nrings) ? 1.0 : 0.5 * (radii[k] + radii[k + 1]);
        const double w = kPi * (hi * hi - lo * lo) / ring_sectors[k];
        for (int m = 0; m < ring_sectors[k]; ++m) mesh.cell_weights[ring_first[k] + m] = w;
    }
    return mesh;
}

}  // namespace

SpatialMesh build_mesh(const MeshSpec& spec) {
    SpatialMesh mesh =
        spec.kind == MeshKind::CartesianDisk ? build_cartesian(spec) : build_polar(spec);
    validate_mesh(mesh);
    return mesh;
}

SpatialMesh make_disk_mesh(int level) {
    MeshSpec spec;
    spec.kind = MeshKind::CartesianDisk;
    spec.level = level;
    return build_mesh(spec);
}

SpatialMesh make_polar_disk_mesh(int level, const std::vector<double>& breakpoints, double h0) {
    MeshSpec spec;
    spec.kind = MeshKind::PolarDisk;
    spec.level = level;
    spec.h0 = h0;
    spec.breakpoints = breakpoints;
    return build_mesh(spec);
}

SpatialMesh refine(const SpatialMesh& mesh) {
    MeshSpec spec = mesh.spec;
    spec.level += 1;
    return build_mesh(spec);
}

namespace {
std::uint64_t coord_key_part(double x) {
    std::uint64_t b;
    std::memcpy(&b, &x, sizeof b);
    return b;
}
}  // namespace

std::vector<int> embed_map(const SpatialMesh& coarse, const SpatialMesh& fine) {
    std::unordered_map<std::uint64_t, std::vector<int>> lookup;
    lookup.reserve(fine.vertex_count());
    const auto key = [](double x, double y) {
        // mix the two coordinate bit patterns; exact-equality match
        return coord_key_part(x) * 0x9e3779b97f4a7c15ULL ^ coord_key_part(y);
    };
    for (std::size_t v = 0; v < fine.vertex_count(); ++v)
        lookup[key(fine.coords[2 * v], fine.coords[2 * v + 1])].push_back(int(v));
    std::vector<int> map(coarse.vertex_count(), -1);
    for (std::size_t v = 0; v < coarse.vertex_count(); ++v) {
        const double x = coarse.coords[2 * v], y = coarse.coords[2 * v + 1];
        auto it = lookup.find(key(x, y));
        if (it != lookup.end()) {
            for (int cand : it->second) {
                if (fine.coords[2 * cand] == x && fine.coords[2 * cand + 1] == y) {
                    map[v] = cand;
                    break;
                }
            }
        }
        if (map[v] < 0)
            throw std::logic_error("refinement lost vertex " + std::to_string(v) +
                                   "; meshes do not nest");
    }
    return map;
}

void validate_mesh(const SpatialMesh& mesh) {
    const std::size_t n = mesh.vertex_count();
    if (n == 0) throw std::invalid_argument("mesh is empty");
    if (mesh.coords.size() != 2 * n || mesh.cell_weights.size() != n ||
        mesh.is_boundary.size() != n)
        throw std::invalid_argument("mesh field sizes disagree");

    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!(mesh.cell_weights[v] > 0.0))
            throw std::invalid_argument("nonpositive cell weight at vertex " + std::to_string(v));
        total += mesh.cell_weights[v];
        const double r = std::hypot(mesh.coords[2 * v], mesh.coords[2 * v + 1]);
        if (std::fabs(r - mesh.radial[v]) > 1e-9)
            throw std::invalid_argument("radial cache wrong at vertex " + std::to_string(v));
    }
    if (std::fabs(total - kPi) > 1e-6 * kPi)
        throw std::invalid_argument("cell weights do not sum to the disk area");

    for (int v : mesh.boundary_vertices)
        if (v < 0 || std::size_t(v) >= n || !mesh.is_boundary[v])
            throw std::invalid_argument("boundary list inconsistent with flags");
    std::size_t flagged = 0;
    for (char f : mesh.is_boundary) flagged += (f != 0);
    if (flagged != mesh.boundary_vertices.size())
        throw std::invalid_argument("boundary flags inconsistent with the vertex list");
    for (auto& e : mesh.boundary_edges)
        if (!mesh.is_boundary[e[0]] || !mesh.is_boundary[e[1]])
            throw std::invalid_argument("boundary edge touches an interior vertex");

    // connectivity
    std::vector<std::vector<int>> adj(n);
    for (auto& e : mesh.edges) {
        if (e[0] < 0 || e[1] < 0 || std::size_t(e[1]) >= n || e[0] >= e[1])
            throw std::invalid_argument("malformed edge");
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int u : adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                queue.push(u);
            }
        }
    }
    if (reached != n) throw std::invalid_argument("mesh graph is disconnected");
}

}  // namespace nullgeo
