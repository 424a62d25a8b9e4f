#include "nullgeo/swif.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "nullgeo/smallmat.hpp"

namespace nullgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double area_factor(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    const double omega = std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    return std::ldexp(1.0, n) / omega;
}

SlabMeasures hausdorff_overestimates(const StaticSpacetime& slab) {
    for (std::size_t v = 0; v < slab.lapse.values.size(); ++v)
        if (slab.lapse.values[v] != 1.0)
            throw std::invalid_argument("overestimates expect a reduced slab (unit lapse)");
    const double T = slab.t1 - slab.t0;
    if (!(T > 0.0)) throw std::invalid_argument("slab has no time extent");
    SlabMeasures out;
    const double vol = volume(*slab.mesh, slab.sigma);
    const BoundaryArea ba = boundary_area(*slab.mesh, slab.sigma);
    out.V = vol * T;
    out.A = ba.value * T + 2.0 * vol;  // side plus the two caps
    out.empty_boundary = ba.empty_boundary;
    return out;
}

double flat_bound(const FlatBoundInputs& in) {
    if (in.n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (!(in.V >= 0.0) || !(in.Vp >= 0.0) || !(in.A >= 0.0) || !(in.H >= 0.0) ||
        !(in.delta >= 0.0))
        throw std::invalid_argument("measures, height, and defect must be nonnegative");
    if (in.delta > in.H)
        throw std::invalid_argument("distance defect exceeds the gluing height");
    return 2.0 * area_factor(in.n + 1) * in.Vp + area_factor(in.n + 2) * in.H * in.V +
           area_factor(in.n + 1) * in.H * in.A;
}

int ZSpace::node(int slice, int level, int vertex) const {
    const int V = int(mesh->vertex_count());
    if (slice < 0 || slice > height_steps || level < 0 || level >= levels || vertex < 0 ||
        vertex >= V)
        throw std::out_of_range("stack node out of range");
    return (slice * levels + level) * V + vertex;
}

int ZSpace::copy_node(int level, int vertex) const {
    if (level < 0 || level >= levels || vertex < 0 || vertex >= int(mesh->vertex_count()))
        throw std::out_of_range("stack node out of range");
    const int base = copy_node_of_vertex[std::size_t(vertex)];
    if (base < 0)
        throw std::invalid_argument("vertex is glued; its copy is the top-slice node");
    const int stride = int(mesh->vertex_count()) - int(w_vertices.size());
    return base + level * stride;
}

int ZSpace::level_of_time(double t) const {
    const int K = levels - 1;
    const int k = int(std::lround((t - t0) / dtau));
    if (k < 0 || k > K || t0 + k * dtau != t)
        throw std::invalid_argument("time " + std::to_string(t) + " is not on the grid ladder");
    return k;
}

namespace {
// Emits every undirected stack edge once through `add`; used for a counting
// pass and a filling pass.
void emit_z_edges(const ZSpace& z, const SpacetimeGrid& g1, const SpacetimeGrid& g2,
                  const std::function<void(int, int, double)>& add) {
    const int V = int(z.mesh->vertex_count());
    const int slab = z.levels * V;  // nodes per slice
    for (int s = 0; s <= z.height_steps; ++s) {
        const SpacetimeGrid& g = (s == 0) ? g1 : g2;
        const int base = s * slab;
        for (int u = 0; u < slab; ++u)
            for (std::size_t k = g.offsets[std::size_t(u)]; k < g.offsets[std::size_t(u) + 1]; ++k)
                if (u < g.targets[k]) add(base + u, base + g.targets[k], g.weights[k]);
    }
    // the glued copy carries the g2 structure; vertices in W are identified
    // with their top-slice nodes, so edges among them already exist
    const auto copy_id = [&](int grid_node) {
        const int level = grid_node / V;
        const int vertex = grid_node % V;
        return z.in_w[std::size_t(vertex)] ? z.node(z.height_steps, level, vertex)
                                           : z.copy_node(level, vertex);
    };
    for (int u = 0; u < slab; ++u) {
        const bool u_in_w = z.in_w[std::size_t(u % V)];
        for (std::size_t k = g2.offsets[std::size_t(u)]; k < g2.offsets[std::size_t(u) + 1]; ++k) {
            const int t = g2.targets[k];
            if (u >= t) continue;
            if (u_in_w && z.in_w[std::size_t(t % V)]) continue;
            add(copy_id(u), copy_id(t), g2.weights[k]);
        }
    }
    for (int s = 0; s < z.height_steps; ++s)
        for (int x = 0; x < slab; ++x) add(s * slab + x, (s + 1) * slab + x, z.dh);
}
}  // namespace

ZSpace build_z_space(const StaticSpacetime& g1, const StaticSpacetime& g2,
                     const std::vector<int>& w_vertices, double height,
                     const GridParams& params) {
    if (g1.mesh->coords != g2.mesh->coords)
        throw std::invalid_argument("both slabs must live on the same mesh");
    if (g1.t0 != g2.t0 || g1.t1 != g2.t1)
        throw std::invalid_argument("both slabs must cover the same time interval");
    if (!(height > 0.0)) throw std::invalid_argument("gluing height must be positive");
    if (w_vertices.empty()) throw std::invalid_argument("gluing set must not be empty");

    SpacetimeGrid grid1 = build_spacetime_grid(g1, params);
    SpacetimeGrid grid2 = build_spacetime_grid(g2, params);
    if (grid1.levels != grid2.levels) {
        GridParams pinned = params;
        pinned.force_intervals = std::max(grid1.levels, grid2.levels) - 1;
        grid1 = build_spacetime_grid(g1, pinned);
        grid2 = build_spacetime_grid(g2, pinned);
    }

    ZSpace z;
    z.mesh = grid1.mesh;
    z.t0 = grid1.t0;
    z.t1 = grid1.t1;
    z.dtau = grid1.dtau;
    z.levels = grid1.levels;
    z.height = height;
    z.height_steps = std::max(1, int(std::lround(height / z.dtau)));
    z.dh = height / z.height_steps;

    const int V = int(z.mesh->vertex_count());
    z.w_vertices = w_vertices;
    std::sort(z.w_vertices.begin(), z.w_vertices.end());
    z.w_vertices.erase(std::unique(z.w_vertices.begin(), z.w_vertices.end()),
                       z.w_vertices.end());
    if (z.w_vertices.front() < 0 || z.w_vertices.back() >= V)
        throw std::out_of_range("gluing vertex outside the mesh");
    z.in_w.assign(std::size_t(V), 0);
    for (int w : z.w_vertices) z.in_w[std::size_t(w)] = 1;

    z.base_nodes = std::int64_t(z.height_steps + 1) * z.levels * V;
    const int copies = V - int(z.w_vertices.size());
    z.copy_node_of_vertex.assign(std::size_t(V), -1);
    {
        int rank = 0;
        for (int v = 0; v < V; ++v)
            if (!z.in_w[std::size_t(v)])
                z.copy_node_of_vertex[std::size_t(v)] = int(z.base_nodes) + rank++;
    }
    const std::int64_t total = z.base_nodes + std::int64_t(z.levels) * copies;
    if (total > params.max_nodes)
        throw std::length_error("gluing stack needs " + std::to_string(total) +
                                " nodes, cap is " + std::to_string(params.max_nodes));

    std::vector<int> degree(std::size_t(total), 0);
    emit_z_edges(z, grid1, grid2, [&](int a, int b, double) {
        ++degree[std::size_t(a)];
        ++degree[std::size_t(b)];
    });
    z.offsets.assign(std::size_t(total) + 1, 0);
    for (std::size_t v = 0; v < std::size_t(total); ++v)
        z.offsets[v + 1] = z.offsets[v] + std::size_t(degree[v]);
    z.targets.resize(z.offsets.back());
    z.weights.resize(z.offsets.back());
    std::vector<std::size_t> cursor(z.offsets.begin(), z.offsets.end() - 1);
    emit_z_edges(z, grid1, grid2, [&](int a, int b, double w) {
        z.targets[cursor[std::size_t(a)]] = b;
        z.weights[cursor[std::size_t(a)]++] = w;
        z.targets[cursor[std::size_t(b)]] = a;
        z.weights[cursor[std::size_t(b)]++] = w;
    });
    // Snap weights to multiples of 2^-48. Path sums below 16 then fit in 52
    // mantissa bits, so Dijkstra adds exactly and the point queries satisfy
    // the triangle inequality with no rounding slack. The snap moves each
    // weight by at most 2^-49.
    for (double& w : z.weights) w = double(std::llround(w * 0x1p48)) * 0x1p-48;
    return z;
}

namespace {
int z_node_of(const ZSpace& z, const ZPoint& p) {
    const int level = z.level_of_time(p.time);
    if (p.vertex < 0 || p.vertex >= int(z.mesh->vertex_count()))
        throw std::out_of_range("vertex outside the mesh");
    if (p.in_copy) {
        if (p.h != z.height)
            throw std::invalid_argument("copy points sit at the gluing height");
        return z.in_w[std::size_t(p.vertex)] ? z.node(z.height_steps, level, p.vertex)
                                             : z.copy_node(level, p.vertex);
    }
    const int s = int(std::lround(p.h / z.dh));
    if (s < 0 || s > z.height_steps ||
        std::fabs(s * z.dh - p.h) > 1e-9 * std::max(1.0, z.height))
        throw std::invalid_argument("height is not on the stack ladder");
    return z.node(s, level, p.vertex);
}
}  // namespace

double z_distance(const ZSpace& z, const ZPoint& p, const ZPoint& q) {
    int a = z_node_of(z, p);
    int b = z_node_of(z, q);
    if (a == b) return 0.0;
    // the stack graph is undirected; a canonical source makes the query
    // symmetric bitwise
    if (a > b) std::swap(a, b);
    const std::vector<double> dist = csr_shortest_paths(z.offsets, z.targets, z.weights, a);
    if (!(dist[std::size_t(b)] < kInf)) throw std::runtime_error("gluing stack is disconnected");
    return dist[std::size_t(b)];
}

std::vector<SwifRow> swif_pipeline(const std::vector<SwifCase>& cases,
                                   const StaticSpacetime& limit, double lambda, double kappa) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const StaticSpacetime lim = conformal_reduce(limit);
    const double T = lim.t1 - lim.t0;
    const double vol_limit = volume(*lim.mesh, lim.sigma);
    const DistanceMatrix d_inf = distance_matrix(*lim.mesh, lim.sigma);
    const SlabMeasures lim_meas = hausdorff_overestimates(lim);
    // the lambda/kappa floor: no volume defect, delta_hat = 0
    const double floor_value =
        flat_bound({.n = 2,
                    .V = lim_meas.V,
                    .Vp = (vol_limit / kappa) * T,
                    .A = lim_meas.A,
                    .H = 4.0 * lambda,
                    .delta = 2.0 * lambda});

    std::vector<SwifRow> rows;
    rows.reserve(cases.size());
    for (const SwifCase& c : cases) {
        if (!(c.j > 1.0)) throw std::invalid_argument("sequence index must exceed 1");
        const StaticSpacetime red = conformal_reduce(c.slab);
        if (red.mesh->coords != lim.mesh->coords)
            throw std::invalid_argument("sequence and limit must share the mesh");
        if (red.t0 != lim.t0 || red.t1 != lim.t1)
            throw std::invalid_argument("sequence and limit must share the time interval");

        SwifRow row;
        row.j = c.j;
        row.lambda = lambda;
        row.kappa = kappa;

        const double lower = 1.0 - 1.0 / c.j;
        double min_gen = kInf;
        for (std::size_t v = 0; v < red.mesh->vertex_count(); ++v)
            min_gen = std::min(
                min_gen, 1.0 / smallmat::max_gen_eigenvalue(2, lim.sigma.at(v), red.sigma.at(v)));
        row.hypothesis_ok = min_gen >= lower * (1.0 - 1e-9);

        StaticSpacetime hat = red;
        for (double& x : hat.sigma.values) x *= 1.0 / lower;
        const double vol_hat = volume(*hat.mesh, hat.sigma);
        const DistanceMatrix d_j = distance_matrix(*hat.mesh, hat.sigma);
        const GoodSetResult gs =
            good_set(*hat.mesh, d_j, d_inf, lambda, kappa, hat.sigma, vol_limit);

        row.delta_hat = gs.feasible ? gs.delta_hat : lambda;
        row.H = 4.0 * lambda + 4.0 * row.delta_hat;
        const SlabMeasures meas = hausdorff_overestimates(hat);
        row.V = meas.V;
        row.A = meas.A;
        row.Vp = gs.target_excess * T;
        row.bound = flat_bound(
            {.n = 2, .V = row.V, .Vp = row.Vp, .A = row.A, .H = row.H, .delta = row.H / 2.0});
        row.excess_measured = gs.excess_volume;
        row.volume_ratio = vol_hat / vol_limit;
        row.floor_value = floor_value;
        row.feasible = gs.feasible;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace nullgeo
