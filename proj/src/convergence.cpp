#include "nullgeo/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nullgeo/kernels.hpp"
#include "nullgeo/smallmat.hpp"

namespace nullgeo {

namespace {
void check_shape(const DistanceMatrix& a, const DistanceMatrix& b) {
    if (a.n() != b.n()) throw std::invalid_argument("matrices cover different point counts");
}
}  // namespace

double uniform_distance(const DistanceMatrix& a, const DistanceMatrix& b) {
    check_shape(a, b);
    return kernels::active().max_abs_diff(a.values.data(), b.values.data(), a.values.size());
}

double gh_upper_from_uniform(const DistanceMatrix& a, const DistanceMatrix& b) {
    return 0.5 * uniform_distance(a, b);
}

GhMapBound gh_upper_via_map(const DistanceMatrix& src, const DistanceMatrix& dst,
                            const std::vector<int>& map) {
    if (int(map.size()) != src.n()) throw std::invalid_argument("map size must equal source points");
    for (int t : map)
        if (t < 0 || t >= dst.n()) throw std::out_of_range("map target out of range");
    GhMapBound out;
    for (int i = 0; i < src.n(); ++i)
        for (int j = 0; j < src.n(); ++j)
            out.distortion =
                std::max(out.distortion, std::fabs(src.at(i, j) - dst.at(map[i], map[j])));
    for (int z = 0; z < dst.n(); ++z) {
        double best = std::numeric_limits<double>::infinity();
        for (int t : map) best = std::min(best, dst.at(z, t));
        out.covering_radius = std::max(out.covering_radius, best);
    }
    // correspondence {(x, y) : d(f x, y) <= covering radius} distorts by at
    // most distortion + 2 covering radius
    out.bound = 0.5 * out.distortion + out.covering_radius;
    return out;
}

HolderFit holder_fit(const DistanceMatrix& d0, const DistanceMatrix& d1, double alpha) {
    check_shape(d0, d1);
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    HolderFit fit;
    for (int i = 0; i < d0.n(); ++i)
        for (int j = i + 1; j < d0.n(); ++j) {
            const double base = d0.at(i, j);
            const double top = d1.at(i, j);
            if (base == 0.0) {
                if (top > 0.0) {
                    fit.unbounded = true;
                    fit.worst_pair = {i, j};
                }
                continue;
            }
            const double c = top / std::pow(base, alpha);
            if (c > fit.constant) {
                fit.constant = c;
                if (!fit.unbounded) fit.worst_pair = {i, j};
            }
        }
    return fit;
}

LowerBoundReport lower_bound_check(const DistanceMatrix& d_j, const DistanceMatrix& floor_matrix,
                                   double margin) {
    check_shape(d_j, floor_matrix);
    LowerBoundReport rep;
    rep.margin = margin;
    rep.max_violation = kernels::active().max_pos_diff(floor_matrix.values.data(),
                                                       d_j.values.data(), d_j.values.size());
    rep.ok = rep.max_violation <= margin;
    bool located = rep.max_violation == 0.0;
    for (int i = 0; i < d_j.n() && !located; ++i)
        for (int j = 0; j < d_j.n() && !located; ++j)
            if (floor_matrix.at(i, j) - d_j.at(i, j) == rep.max_violation) {
                rep.worst_pair = {i, j};
                located = true;
            }
    return rep;
}

PointwiseReport pointwise_report(const std::vector<const DistanceMatrix*>& seq,
                                 const DistanceMatrix& limit,
                                 const std::vector<std::pair<int, int>>& pairs, double eps) {
    if (seq.empty()) throw std::invalid_argument("empty matrix sequence");
    if (pairs.empty()) throw std::invalid_argument("no sample pairs");
    PointwiseReport rep;
    for (const DistanceMatrix* m : seq) {
        check_shape(*m, limit);
        std::size_t hits = 0;
        for (auto& [i, j] : pairs)
            if (std::fabs(m->at(i, j) - limit.at(i, j)) <= eps) ++hits;
        rep.fraction_within.push_back(double(hits) / double(pairs.size()));
    }
    rep.final_fraction = rep.fraction_within.back();
    return rep;
}

GoodSetResult good_set(const SpatialMesh& mesh, const DistanceMatrix& d_j,
                       const DistanceMatrix& d_inf, double lambda, double kappa,
                       const MetricField& metric_j, double limit_volume) {
    check_shape(d_j, d_inf);
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const int n = d_j.n();
    std::vector<double> cell_volume(std::size_t(n), 0.0);
    double vol_j = 0.0;
    {
        // total volume uses every mesh cell; rows are charged their own cell
        for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
            vol_j += mesh.cell_weights[v] * smallmat::sqrt_det_spd(metric_j.dim, metric_j.at(v));
        for (int i = 0; i < n; ++i) {
            const int v = d_j.points[i].vertex;
            if (v < 0 || v >= int(mesh.vertex_count()))
                throw std::out_of_range("matrix row vertex outside the mesh");
            cell_volume[std::size_t(i)] =
                mesh.cell_weights[std::size_t(v)] *
                smallmat::sqrt_det_spd(metric_j.dim, metric_j.at(std::size_t(v)));
        }
    }
    GoodSetResult result;
    result.target_excess = limit_volume / kappa + std::fabs(vol_j - limit_volume);
    const double schedule[] = {0.0, lambda / 8.0, lambda / 4.0, lambda / 2.0, lambda};
    const auto deviation = [&](int i, int j) { return std::fabs(d_j.at(i, j) - d_inf.at(i, j)); };

    for (double delta_hat : schedule) {
        const double threshold = 2.0 * lambda + 2.0 * delta_hat;
        std::vector<char> alive(std::size_t(n), 1);
        std::vector<int> bad(std::size_t(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (deviation(i, j) >= threshold) {
                    ++bad[std::size_t(i)];
                    ++bad[std::size_t(j)];
                }
        double excess = 0.0;
        for (;;) {
            int worst = -1;
            for (int i = 0; i < n; ++i)
                if (alive[std::size_t(i)] && bad[std::size_t(i)] > 0 &&
                    (worst < 0 || bad[std::size_t(i)] > bad[std::size_t(worst)]))
                    worst = i;
            if (worst < 0) break;
            alive[std::size_t(worst)] = 0;
            excess += cell_volume[std::size_t(worst)];
            for (int i = 0; i < n; ++i)
                if (alive[std::size_t(i)] && deviation(worst, i) >= threshold) --bad[std::size_t(i)];
        }
        result.delta_hat = delta_hat;
        result.excess_volume = excess;
        result.members.clear();
        for (int i = 0; i < n; ++i)
            if (alive[std::size_t(i)]) result.members.push_back(i);
        result.deviation_bound = 0.0;
        for (std::size_t a = 0; a < result.members.size(); ++a)
            for (std::size_t b = a + 1; b < result.members.size(); ++b)
                result.deviation_bound = std::max(
                    result.deviation_bound, deviation(result.members[a], result.members[b]));
        if (excess <= result.target_excess) {
            result.feasible = true;
            return result;
        }
    }
    result.feasible = false;  // carries the delta_hat = lambda attempt
    return result;
}

}  // namespace nullgeo
