#include "nullgeo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "nullgeo/kernels.hpp"
#include "nullgeo/serialization.hpp"
#include "nullgeo/smallmat.hpp"

namespace nullgeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double edge_length(const SpatialMesh& mesh, const MetricField& sigma, int u, int v) {
    const double vx = mesh.coords[2 * std::size_t(v)] - mesh.coords[2 * std::size_t(u)];
    const double vy = mesh.coords[2 * std::size_t(v) + 1] - mesh.coords[2 * std::size_t(u) + 1];
    const double* a = sigma.at(std::size_t(u));
    const double* b = sigma.at(std::size_t(v));
    double avg[4];
    for (int k = 0; k < 4; ++k) avg[k] = 0.5 * (a[k] + b[k]);
    const double vec[2] = {vx, vy};
    const double len = std::sqrt(smallmat::quad_form(2, avg, vec));
    if (!(len > 0.0)) throw std::invalid_argument("degenerate edge length");
    return len;
}

EdgeGraph build_edge_graph(const SpatialMesh& mesh, const MetricField& sigma) {
    const int n = int(mesh.vertex_count());
    if (sigma.vertex_count() != mesh.vertex_count())
        throw std::invalid_argument("metric field size mismatch");
    EdgeGraph g;
    g.n = n;
    std::vector<int> degree(n, 0);
    for (auto& e : mesh.edges) {
        ++degree[e[0]];
        ++degree[e[1]];
    }
    g.offsets.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + degree[v];
    g.targets.resize(g.offsets[n]);
    g.weights.resize(g.offsets[n]);
    std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (auto& e : mesh.edges) {
        const double len = edge_length(mesh, sigma, e[0], e[1]);
        g.max_edge = std::max(g.max_edge, len);
        g.targets[cursor[e[0]]] = e[1];
        g.weights[cursor[e[0]]++] = len;
        g.targets[cursor[e[1]]] = e[0];
        g.weights[cursor[e[1]]++] = len;
    }
    return g;
}

std::vector<double> shortest_paths(const EdgeGraph& g, int source) {
    if (source < 0 || source >= g.n) throw std::out_of_range("source vertex out of range");
    std::vector<double> dist(g.n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (int k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
            const double nd = d + g.weights[k];
            const int u = g.targets[k];
            if (nd < dist[u]) {
                dist[u] = nd;
                heap.emplace(nd, u);
            }
        }
    }
    return dist;
}

std::string PointKey::id() const {
    std::string s = "v" + std::to_string(vertex);
    if (has_time()) s += "@t" + format_double(time);
    return s;
}

void closure_finalize(DistanceMatrix& m) {
    const int n = m.n();
    if (int(m.values.size()) != n * n) throw std::invalid_argument("matrix size mismatch");
    for (int i = 0; i < n; ++i) m.at(i, i) = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = std::min(m.at(i, j), m.at(j, i));
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    // Min-plus relaxation sweeps to the floating-point fixpoint. Entries only
    // decrease and the pass count needed in practice is 2-3; the cap guards
    // against a cycling bug, not against slow convergence.
    const auto& ops = kernels::active();
    bool changed = true;
    int sweeps = 0;
    while (changed) {
        if (++sweeps > 64) throw std::logic_error("distance closure failed to reach a fixpoint");
        changed = false;
        for (int k = 0; k < n; ++k) {
            const double* rk = m.row(k);
            for (int i = 0; i < n; ++i) {
                if (i == k) continue;
                const double dik = m.at(i, k);
                if (!(dik < kInf)) continue;
                changed |= ops.minplus_relax(m.row(i), rk, dik, std::size_t(n));
            }
        }
    }
}

DistanceMatrix distance_matrix(const SpatialMesh& mesh, const MetricField& sigma,
                               const std::vector<int>& vertices) {
    const EdgeGraph g = build_edge_graph(mesh, sigma);
    std::vector<int> verts = vertices;
    if (verts.empty()) {
        verts.resize(mesh.vertex_count());
        for (std::size_t v = 0; v < mesh.vertex_count(); ++v) verts[v] = int(v);
    }
    DistanceMatrix m;
    const int n = int(verts.size());
    m.points.resize(n);
    m.values.assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (verts[i] < 0 || verts[i] >= g.n) throw std::out_of_range("sample vertex out of range");
        m.points[i].vertex = verts[i];
    }
    for (int i = 0; i < n; ++i) {
        const std::vector<double> dist = shortest_paths(g, verts[i]);
        for (int j = 0; j < n; ++j) {
            const double d = dist[verts[j]];
            if (!(d < kInf)) throw std::runtime_error("mesh graph is disconnected");
            m.at(i, j) = d;
        }
    }
    closure_finalize(m);
    return m;
}

double diameter(const DistanceMatrix& m) {
    if (m.n() == 0) throw std::invalid_argument("empty distance matrix");
    return kernels::active().reduce_max(m.values.data(), m.values.size());
}

std::string to_csv(const DistanceMatrix& m) {
    std::string out = "id";
    for (const auto& p : m.points) out += "," + p.id();
    out += "\n";
    for (int i = 0; i < m.n(); ++i) {
        out += m.points[i].id();
        for (int j = 0; j < m.n(); ++j) out += "," + format_double(m.at(i, j));
        out += "\n";
    }
    return out;
}

DistanceMatrix matrix_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty csv");
    DistanceMatrix m;
    {
        std::istringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, ',')) {
            if (first) {
                first = false;
                continue;
            }
            PointKey key;
            const auto at = cell.find("@t");
            if (cell.empty() || cell[0] != 'v') throw std::invalid_argument("bad point id " + cell);
            key.vertex = std::stoi(cell.substr(1, at == std::string::npos ? at : at - 1));
            if (at != std::string::npos) key.time = std::stod(cell.substr(at + 2));
            m.points.push_back(key);
        }
    }
    const int n = m.n();
    m.values.assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("csv row count mismatch");
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // row label
        for (int j = 0; j < n; ++j) {
            if (!std::getline(row, cell, ',')) throw std::invalid_argument("csv column mismatch");
            m.at(i, j) = std::stod(cell);
        }
    }
    return m;
}

}  // namespace nullgeo
