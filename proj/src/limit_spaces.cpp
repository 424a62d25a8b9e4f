#include "nullgeo/limit_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nullgeo/null_distance.hpp"
#include "nullgeo/rng.hpp"

namespace nullgeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GluedSpace make_glued_space(std::vector<DistanceMatrix> components,
                            std::vector<std::pair<ComponentRef, ComponentRef>> identifications) {
    if (components.empty()) throw std::invalid_argument("glued space needs at least one component");
    GluedSpace space;
    space.offsets.resize(components.size() + 1, 0);
    for (std::size_t c = 0; c < components.size(); ++c)
        space.offsets[c + 1] = space.offsets[c] + components[c].n();
    const int n = space.offsets.back();

    space.quotient.points.reserve(std::size_t(n));
    for (const DistanceMatrix& comp : components)
        space.quotient.points.insert(space.quotient.points.end(), comp.points.begin(),
                                     comp.points.end());
    space.quotient.values.assign(std::size_t(n) * n, kInf);
    for (std::size_t c = 0; c < components.size(); ++c) {
        const DistanceMatrix& comp = components[c];
        const int base = space.offsets[c];
        for (int i = 0; i < comp.n(); ++i)
            for (int j = 0; j < comp.n(); ++j)
                space.quotient.at(base + i, base + j) = comp.at(i, j);
    }
    for (const auto& [p, q] : identifications) {
        if (p.component < 0 || p.component >= int(components.size()) || q.component < 0 ||
            q.component >= int(components.size()))
            throw std::out_of_range("identification names a missing component");
        if (p.index < 0 || p.index >= components[std::size_t(p.component)].n() || q.index < 0 ||
            q.index >= components[std::size_t(q.component)].n())
            throw std::out_of_range("identification row outside its component");
        space.quotient.at(space.row(p), space.row(q)) = 0.0;
        space.quotient.at(space.row(q), space.row(p)) = 0.0;
    }
    closure_finalize(space.quotient);
    for (double v : space.quotient.values)
        if (!(v < kInf)) throw std::runtime_error("disconnected quotient");

    space.components = std::move(components);
    space.identifications = std::move(identifications);
    return space;
}

double glued_distance(const GluedSpace& space, const ComponentRef& p, const ComponentRef& q) {
    if (p.component < 0 || p.component >= int(space.components.size()) || q.component < 0 ||
        q.component >= int(space.components.size()))
        throw std::out_of_range("point names a missing component");
    if (p.index < 0 || p.index >= space.components[std::size_t(p.component)].n() || q.index < 0 ||
        q.index >= space.components[std::size_t(q.component)].n())
        throw std::out_of_range("point row outside its component");
    return space.quotient.at(space.row(p), space.row(q));
}

namespace {

std::vector<double> clean_times(std::vector<double> times) {
    if (times.empty()) throw std::invalid_argument("limit space needs sample times");
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.front() < 0.0 || times.back() > 1.0)
        throw std::invalid_argument("sample times must lie in [0, 1]");
    return times;
}

int center_vertex(const SpatialMesh& mesh) {
    int best = 0;
    for (std::size_t v = 1; v < mesh.vertex_count(); ++v)
        if (mesh.radial[v] < mesh.radial[std::size_t(best)]) best = int(v);
    return best;
}

// Center and the whole boundary ring always participate; the interior budget
// is filled by an even stride through the remaining vertices, rotated by the
// seed so different runs can sample different rings deterministically.
std::vector<int> select_slab_rows(const SpatialMesh& mesh, int max_spatial,
                                  unsigned long long seed) {
    const int V = int(mesh.vertex_count());
    std::vector<int> rows;
    rows.push_back(center_vertex(mesh));
    for (int b : mesh.boundary_vertices) rows.push_back(b);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (int(rows.size()) > max_spatial)
        throw std::invalid_argument("max_spatial cannot hold the center and the boundary ring");

    std::vector<char> taken(std::size_t(V), 0);
    for (int r : rows) taken[std::size_t(r)] = 1;
    std::vector<int> pool;
    for (int v = 0; v < V; ++v)
        if (!taken[std::size_t(v)]) pool.push_back(v);
    const int budget = std::min<int>(max_spatial - int(rows.size()), int(pool.size()));
    if (budget > 0) {
        Rng rng{seed};
        const std::size_t offset = rng.below(pool.size());
        for (int k = 0; k < budget; ++k) {
            const std::size_t at = (offset + std::size_t(k) * pool.size() / std::size_t(budget)) %
                                   pool.size();
            rows.push_back(pool[at]);
        }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

DistanceMatrix flat_null_matrix(const SpatialMesh& mesh, const std::vector<int>& rows,
                                const std::vector<double>& times, DistanceMatrix& flat_spatial) {
    flat_spatial = distance_matrix(mesh, MetricField::euclidean(mesh), rows);
    std::vector<int> row_ids(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) row_ids[i] = int(i);
    return null_matrix(flat_spatial, slab_samples(row_ids, times));
}

DistanceMatrix taxi_matrix(const std::vector<double>& times, int grid, double lambda) {
    if (grid < 2) throw std::invalid_argument("taxi square needs at least two levels per side");
    DistanceMatrix m;
    for (double s : times)
        for (int u = 0; u < grid; ++u) m.points.push_back({u, s});
    const int n = m.n();
    m.values.assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double ds = std::fabs(m.points[std::size_t(i)].time -
                                        m.points[std::size_t(j)].time);
            const double du = std::fabs(double(m.points[std::size_t(i)].vertex) -
                                        double(m.points[std::size_t(j)].vertex)) /
                              double(grid - 1);
            m.at(i, j) = ds + lambda * du;
        }
    return m;
}

}  // namespace

LimitSpace build_limit_space(const std::string& example, const SpatialMesh& mesh,
                             const LimitParams& params) {
    if (!is_example_id(example)) throw std::invalid_argument("unknown example id: " + example);
    LimitSpace limit;
    limit.example = example;
    limit.times = clean_times(params.times);
    limit.slab_rows = select_slab_rows(mesh, params.max_spatial, params.seed);

    const DistanceMatrix null_flat =
        flat_null_matrix(mesh, limit.slab_rows, limit.times, limit.flat_spatial);
    const int R = int(limit.slab_rows.size());
    const int T = int(limit.times.size());
    const int center = center_vertex(mesh);
    std::vector<int> boundary_pos;
    int center_pos = -1;
    for (int i = 0; i < R; ++i) {
        if (mesh.is_boundary[std::size_t(limit.slab_rows[std::size_t(i)])])
            boundary_pos.push_back(i);
        if (limit.slab_rows[std::size_t(i)] == center) center_pos = i;
    }
    const auto slab_row = [R](int t, int pos) { return t * R + pos; };

    std::vector<DistanceMatrix> components;
    std::vector<std::pair<ComponentRef, ComponentRef>> idents;
    if (example == "ex31-space-collapse" || example == "ex32-time-blowup") {
        // each boundary circle at a fixed time collapses to one point
        components.push_back(null_flat);
        for (int t = 0; t < T; ++t)
            for (std::size_t b = 1; b < boundary_pos.size(); ++b)
                idents.push_back({{0, slab_row(t, boundary_pos[0])},
                                  {0, slab_row(t, boundary_pos[b])}});
    } else if (example == "ex33-bubble") {
        // component 0: outer disk; component 1: unit-scale bubble copy whose
        // boundary circle at each time is glued to the outer center
        components.push_back(null_flat);
        components.push_back(null_flat);
        for (int t = 0; t < T; ++t)
            for (int b : boundary_pos)
                idents.push_back({{1, slab_row(t, b)}, {0, slab_row(t, center_pos)}});
    } else {  // ex34-spline
        limit.taxi_lambda = params.lambda;
        components.push_back(null_flat);
        components.push_back(taxi_matrix(limit.times, params.taxi_grid, params.lambda));
        for (int t = 0; t < T; ++t)
            idents.push_back({{1, t * params.taxi_grid + (params.taxi_grid - 1)},
                              {0, slab_row(t, center_pos)}});
    }
    limit.space = make_glued_space(std::move(components), std::move(idents));
    return limit;
}

std::vector<int> limit_correspondence(const LimitSpace& limit, const SpatialMesh& mesh, double j) {
    if (!(j >= 2.0)) throw std::invalid_argument("sequence index j must be at least 2");
    const int R = int(limit.slab_rows.size());
    const int T = int(limit.times.size());
    const int center = center_vertex(mesh);
    int center_pos = -1;
    for (int i = 0; i < R; ++i)
        if (limit.slab_rows[std::size_t(i)] == center) center_pos = i;

    // nearest slab row to a coordinate pair, ties to the lower position
    const auto nearest_pos = [&](double x, double y) {
        int best = 0;
        double best_d = kInf;
        for (int i = 0; i < R; ++i) {
            const double* p = mesh.vertex(std::size_t(limit.slab_rows[std::size_t(i)]));
            const double d = (p[0] - x) * (p[0] - x) + (p[1] - y) * (p[1] - y);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    };

    std::vector<int> out;
    out.reserve(std::size_t(T) * R);
    const bool bubble = limit.example == "ex33-bubble";
    const bool spline = limit.example == "ex34-spline";
    RadialProfile profile;
    if (spline) profile = family_spline(j, limit.taxi_lambda);
    const int grid = spline ? int(limit.space.components[1].n() / T) : 0;

    for (int t = 0; t < T; ++t)
        for (int i = 0; i < R; ++i) {
            const int v = limit.slab_rows[std::size_t(i)];
            const double r = mesh.radial[std::size_t(v)];
            ComponentRef ref{0, t * R + i};
            if (bubble) {
                if (r * j <= 1.0) {
                    const double* p = mesh.vertex(std::size_t(v));
                    ref = {1, t * R + nearest_pos(j * p[0], j * p[1])};
                } else if (r * j < 1.5) {
                    ref = {0, t * R + center_pos};  // bridge pinches onto the gluing point
                }
            } else if (spline && r * j < 1.0) {
                const double depth = profile_radial_length(profile, r, 1.0 / j);
                const double u = 1.0 - std::min(1.0, depth / limit.taxi_lambda);
                const int ui = int(std::lround(u * (grid - 1)));
                ref = {1, t * grid + ui};
            }
            out.push_back(limit.space.row(ref));
        }
    return out;
}

}  // namespace nullgeo
