#include "nullgeo/null_distance.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace nullgeo {

double null_distance_static(double spatial_distance, double t, double s) {
    if (!(spatial_distance >= 0.0)) throw std::invalid_argument("negative spatial distance");
    return std::max(spatial_distance, std::fabs(t - s));
}

namespace {
// Row lookup for matrices keyed by plain mesh vertices.
int spatial_row(const DistanceMatrix& m, int vertex) {
    for (int i = 0; i < m.n(); ++i)
        if (m.points[i].vertex == vertex && !m.points[i].has_time()) return i;
    throw std::invalid_argument("vertex " + std::to_string(vertex) + " not in spatial matrix");
}
}  // namespace

double null_distance_static(const DistanceMatrix& spatial, const SpacetimePoint& p,
                            const SpacetimePoint& q) {
    const int i = spatial_row(spatial, p.vertex);
    const int j = spatial_row(spatial, q.vertex);
    return null_distance_static(spatial.at(i, j), p.time, q.time);
}

DistanceMatrix null_matrix(const DistanceMatrix& spatial, const std::vector<SlabPoint>& samples) {
    const int n = int(samples.size());
    DistanceMatrix m;
    m.points.resize(n);
    m.values.assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const SlabPoint& s = samples[i];
        if (s.spatial < 0 || s.spatial >= spatial.n())
            throw std::out_of_range("slab sample row out of range");
        m.points[i] = PointKey{spatial.points[s.spatial].vertex, s.time};
    }
    // fl(t - s) is the exact negative of fl(s - t), so fabs of it is a bitwise
    // symmetric matrix; max with the symmetric spatial block keeps every axiom
    // the finalized input had (for dyadic times the |dt| sums are exact).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = std::max(spatial.at(samples[i].spatial, samples[j].spatial),
                                  std::fabs(samples[i].time - samples[j].time));
    return m;
}

std::vector<SlabPoint> slab_samples(const std::vector<int>& rows,
                                    const std::vector<double>& times) {
    std::vector<SlabPoint> out;
    out.reserve(rows.size() * times.size());
    for (double t : times)
        for (int r : rows) out.push_back(SlabPoint{t, r});
    return out;
}

double null_length(const PiecewiseCausalPath& path, const DistanceMatrix& spatial) {
    if (path.points.empty()) throw std::invalid_argument("empty path");
    if (path.orientations.size() + 1 != path.points.size())
        throw std::invalid_argument("orientation count must be point count minus one");
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
        const SpacetimePoint& a = path.points[k];
        const SpacetimePoint& b = path.points[k + 1];
        const double dt = b.time - a.time;
        const int seg = int(k);
        if (path.orientations[k] == Orientation::Future ? dt < 0.0 : dt > 0.0)
            throw CausalityError(seg, "segment " + std::to_string(seg) +
                                          " runs against its orientation flag");
        const double d =
            spatial.at(spatial_row(spatial, a.vertex), spatial_row(spatial, b.vertex));
        if (std::fabs(dt) < d * (1.0 - 1e-9))
            throw CausalityError(seg, "segment " + std::to_string(seg) +
                                          " is not causal: |dt| < spatial distance");
        total += std::fabs(dt);
    }
    return total;
}

}  // namespace nullgeo
