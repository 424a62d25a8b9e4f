#include "nullgeo/causal_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace nullgeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int round_up_pow2(int k) {
    int p = 1;
    while (p < k) p *= 2;
    return p;
}

struct EdgeSink {
    std::vector<int>* degree = nullptr;  // counting pass
    SpacetimeGrid* grid = nullptr;       // filling pass
    std::vector<std::size_t> cursor;

    void add(int a, int b, double w) {
        if (degree) {
            ++(*degree)[a];
            ++(*degree)[b];
            return;
        }
        grid->targets[cursor[a]] = b;
        grid->weights[cursor[a]++] = w;
        grid->targets[cursor[b]] = a;
        grid->weights[cursor[b]++] = w;
    }
};

// Emits every grid edge once; run twice, first to count then to fill.
void emit_edges(const SpacetimeGrid& grid, const std::vector<double>& lens, EdgeSink& sink) {
    const SpatialMesh& mesh = *grid.mesh;
    const int V = int(mesh.vertex_count());
    const int K = grid.levels - 1;
    const double T = grid.t1 - grid.t0;
    for (int k = 0; k < K; ++k)
        for (int v = 0; v < V; ++v)
            sink.add(k * V + v, (k + 1) * V + v, grid.dtau);
    for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
        const int u = mesh.edges[e][0];
        const int v = mesh.edges[e][1];
        const double len = lens[e];
        // causal diagonal: round the traversal time up to a whole number of
        // steps, then once more if rounding in the ratio undershot
        int c = int(std::ceil(len / grid.dtau));
        if (c * grid.dtau < len) ++c;
        if (c <= K) {
            const double w = c * grid.dtau;
            for (int k = 0; k + c <= K; ++k) {
                sink.add(k * V + u, (k + c) * V + v, w);
                sink.add(k * V + v, (k + c) * V + u, w);
            }
        }
        // level-preserving zigzag: needs half the length as headroom on one side
        const double half = 0.5 * len;
        for (int k = 0; k <= K; ++k) {
            const double tk = k * grid.dtau;
            if (tk >= half || T - tk >= half) sink.add(k * V + u, k * V + v, len);
        }
    }
}

std::vector<double> grid_shortest_paths(const SpacetimeGrid& g, int source) {
    return csr_shortest_paths(g.offsets, g.targets, g.weights, source);
}
}  // namespace

std::vector<double> csr_shortest_paths(const std::vector<std::size_t>& offsets,
                                       const std::vector<int>& targets,
                                       const std::vector<double>& weights, int source) {
    const std::size_t n = offsets.size() - 1;
    if (source < 0 || std::size_t(source) >= n) throw std::out_of_range("graph node out of range");
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[std::size_t(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[std::size_t(v)]) continue;
        for (std::size_t k = offsets[std::size_t(v)]; k < offsets[std::size_t(v) + 1]; ++k) {
            const double nd = d + weights[k];
            const int u = targets[k];
            if (nd < dist[std::size_t(u)]) {
                dist[std::size_t(u)] = nd;
                heap.emplace(nd, u);
            }
        }
    }
    return dist;
}

int SpacetimeGrid::level_of_time(double t) const {
    const int K = levels - 1;
    const int k = int(std::lround((t - t0) / dtau));
    if (k < 0 || k > K || t0 + k * dtau != t)
        throw std::invalid_argument("time " + std::to_string(t) + " is not on the grid ladder");
    return k;
}

SpacetimeGrid build_spacetime_grid(const StaticSpacetime& st, const GridParams& params) {
    validate_spacetime(st);
    const StaticSpacetime red = conformal_reduce(st);
    SpacetimeGrid grid;
    grid.mesh = red.mesh;
    grid.t0 = red.t0;
    grid.t1 = red.t1;
    const double T = red.t1 - red.t0;
    if (!(T > 0.0)) throw std::invalid_argument("slab has no time extent");

    grid.spatial = build_edge_graph(*red.mesh, red.sigma);
    grid.edge_lengths.resize(red.mesh->edges.size());
    for (std::size_t e = 0; e < red.mesh->edges.size(); ++e)
        grid.edge_lengths[e] =
            edge_length(*red.mesh, red.sigma, red.mesh->edges[e][0], red.mesh->edges[e][1]);

    int K = params.force_intervals;
    if (K <= 0) {
        if (!(params.dtau_factor > 0.0)) throw std::invalid_argument("dtau_factor must be positive");
        const double target = params.dtau_factor * grid.spatial.max_edge;
        K = round_up_pow2(int(std::ceil(T / target)));
    }
    grid.dtau = T / K;
    grid.levels = K + 1;
    if (grid.node_count() > params.max_nodes)
        throw std::length_error("spacetime grid needs " + std::to_string(grid.node_count()) +
                                " nodes, cap is " + std::to_string(params.max_nodes));

    const std::size_t n = std::size_t(grid.node_count());
    std::vector<int> degree(n, 0);
    EdgeSink counter;
    counter.degree = &degree;
    emit_edges(grid, grid.edge_lengths, counter);

    grid.offsets.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) grid.offsets[v + 1] = grid.offsets[v] + degree[v];
    grid.targets.resize(grid.offsets[n]);
    grid.weights.resize(grid.offsets[n]);
    EdgeSink filler;
    filler.grid = &grid;
    filler.cursor.assign(grid.offsets.begin(), grid.offsets.end() - 1);
    emit_edges(grid, grid.edge_lengths, filler);
    return grid;
}

double null_distance_oracle(const SpacetimeGrid& grid, const SpacetimePoint& p,
                            const SpacetimePoint& q) {
    const int a = grid.node_of(grid.level_of_time(p.time), p.vertex);
    const int b = grid.node_of(grid.level_of_time(q.time), q.vertex);
    const std::vector<double> dist = grid_shortest_paths(grid, a);
    if (!(dist[std::size_t(b)] < kInf)) throw std::runtime_error("grid is disconnected");
    return std::max(dist[std::size_t(b)], std::fabs(p.time - q.time));
}

DistanceMatrix oracle_matrix(const SpacetimeGrid& grid,
                             const std::vector<SpacetimePoint>& samples) {
    const int n = int(samples.size());
    DistanceMatrix m;
    m.points.resize(n);
    m.values.assign(std::size_t(n) * n, 0.0);
    std::vector<int> node(n);
    for (int i = 0; i < n; ++i) {
        node[i] = grid.node_of(grid.level_of_time(samples[i].time), samples[i].vertex);
        m.points[i] = PointKey{samples[i].vertex, samples[i].time};
    }
    std::unordered_map<int, std::vector<double>> rows;
    for (int i = 0; i < n; ++i) {
        if (rows.count(node[i])) continue;
        rows.emplace(node[i], grid_shortest_paths(grid, node[i]));
    }
    for (int i = 0; i < n; ++i) {
        const std::vector<double>& dist = rows.at(node[i]);
        for (int j = 0; j < n; ++j) {
            const double d = dist[std::size_t(node[j])];
            if (!(d < kInf)) throw std::runtime_error("grid is disconnected");
            m.at(i, j) = d;
        }
    }
    // close the raw graph matrix first, then floor at the exact |dt| matrix;
    // the max of two matrices with exact axioms keeps them (see null_matrix)
    closure_finalize(m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = std::max(m.at(i, j), std::fabs(samples[i].time - samples[j].time));
    return m;
}

CausalRelation causal_relation(const SpacetimeGrid& grid, const SpacetimePoint& p,
                               const SpacetimePoint& q) {
    CausalRelation rel;
    rel.dt = q.time - p.time;
    if (p.vertex == q.vertex && p.time == q.time) {
        rel.cls = CausalClass::Future;
        return rel;
    }
    const std::vector<double> dist = shortest_paths(grid.spatial, p.vertex);
    rel.spatial_distance = dist[std::size_t(q.vertex)];
    if (!(rel.spatial_distance < kInf)) throw std::runtime_error("mesh graph is disconnected");
    if (rel.dt >= rel.spatial_distance)
        rel.cls = CausalClass::Future;
    else if (-rel.dt >= rel.spatial_distance)
        rel.cls = CausalClass::Past;
    else
        rel.cls = CausalClass::Spacelike;
    // graph distances overestimate by up to the direction-set dilation, so the
    // unreliable strip around the cone is one cell plus that margin
    rel.marginal =
        std::fabs(std::fabs(rel.dt) - rel.spatial_distance) <=
        grid.spatial.max_edge + 0.03 * rel.spatial_distance;
    return rel;
}

}  // namespace nullgeo
