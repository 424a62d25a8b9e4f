#include "nullgeo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "nullgeo/null_distance.hpp"
#include "nullgeo/rng.hpp"
#include "nullgeo/serialization.hpp"

namespace nullgeo {

namespace {

// Reduced spatial metric of one family member. ex32 carries its profile in
// the lapse, so reduction is what makes the four families comparable.
MetricField member_sigma(const std::string& example, const FamilyParams& p,
                         const std::shared_ptr<const SpatialMesh>& mesh) {
    return conformal_reduce(make_family_spacetime(example, p, mesh)).sigma;
}

DistanceMatrix slab_null(const SpatialMesh& mesh, const MetricField& sigma,
                         const std::vector<int>& verts, const std::vector<double>& times) {
    const DistanceMatrix spatial = distance_matrix(mesh, sigma, verts);
    std::vector<int> idx(verts.size());
    std::iota(idx.begin(), idx.end(), 0);
    return null_matrix(spatial, slab_samples(idx, times));
}

std::vector<std::pair<int, int>> seeded_pairs(int n, int count, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("pair sampling needs at least two rows");
    Rng rng{seed};
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(std::size_t(count));
    for (int k = 0; k < count; ++k) {
        const int a = int(rng.below(std::uint64_t(n)));
        int b = int(rng.below(std::uint64_t(n - 1)));
        if (b >= a) ++b;
        pairs.emplace_back(a, b);
    }
    return pairs;
}

}  // namespace

std::vector<int> sample_vertices(const SpatialMesh& mesh, int count, std::uint64_t seed) {
    const int V = int(mesh.vertex_count());
    if (count < 2) throw std::invalid_argument("vertex sample needs at least two entries");
    count = std::min(count, V);

    int center = 0;
    for (int v = 1; v < V; ++v)
        if (mesh.radial[std::size_t(v)] < mesh.radial[std::size_t(center)]) center = v;
    std::vector<int> boundary, interior;
    for (int v = 0; v < V; ++v) {
        if (v == center) continue;
        (mesh.is_boundary[std::size_t(v)] ? boundary : interior).push_back(v);
    }

    // center first, then an even spread over the boundary, then a seeded
    // shuffle of whatever is left
    std::vector<int> picked{center};
    const int want_boundary =
        std::min(int(boundary.size()), std::max(4, count / 4));
    const int take_boundary = std::min(want_boundary, count - 1);
    for (int k = 0; k < take_boundary; ++k)
        picked.push_back(boundary[std::size_t(k) * boundary.size() / std::size_t(take_boundary)]);

    std::vector<int> pool;
    for (int v : interior) pool.push_back(v);
    for (int v : boundary)
        if (std::find(picked.begin() + 1, picked.end(), v) == picked.end()) pool.push_back(v);
    Rng rng{seed};
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[std::size_t(rng.below(std::uint64_t(i)))]);
    for (std::size_t i = 0; i < pool.size() && int(picked.size()) < count; ++i)
        picked.push_back(pool[i]);

    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    return picked;
}

std::vector<double> dyadic_times(double t0, double t1, int count) {
    if (count < 2) throw std::invalid_argument("need at least two sample times");
    if (!(t1 > t0)) throw std::invalid_argument("time interval is empty");
    std::int64_t den = 1;
    while (den < count - 1) den <<= 1;
    std::vector<double> times;
    times.reserve(std::size_t(count));
    for (int k = 0; k < count; ++k) {
        const auto num =
            std::int64_t(std::llround(double(k) * double(den) / double(count - 1)));
        times.push_back(t0 + (t1 - t0) * (double(num) / double(den)));
    }
    return times;
}

OracleCheckResult oracle_check(const StaticSpacetime& st, int pair_count, std::uint64_t seed,
                               double rel_tol, const GridParams& gp) {
    if (pair_count < 1) throw std::invalid_argument("oracle check needs at least one pair");
    const SpacetimeGrid grid = build_spacetime_grid(st, gp);
    OracleCheckResult out;
    out.rel_tol = rel_tol;
    for (double len : grid.edge_lengths) out.cell = std::max(out.cell, len);
    out.tolerance_provenance =
        "per pair: " + format_double(rel_tol) +
        " * formula + one grid cell (max reduced edge length " + format_double(out.cell) +
        "); the graph overshoots causal pairs by at most one cell and is exact for "
        "spacelike pairs";

    const int V = int(st.mesh->vertex_count());
    Rng rng{seed};
    std::vector<SpacetimePoint> ps, qs;
    std::vector<int> verts;
    for (int k = 0; k < pair_count; ++k) {
        SpacetimePoint p, q;
        p.vertex = int(rng.below(std::uint64_t(V)));
        q.vertex = int(rng.below(std::uint64_t(V)));
        p.time = grid.t0 + double(rng.below(std::uint64_t(grid.levels))) * grid.dtau;
        q.time = grid.t0 + double(rng.below(std::uint64_t(grid.levels))) * grid.dtau;
        ps.push_back(p);
        qs.push_back(q);
        verts.push_back(p.vertex);
        verts.push_back(q.vertex);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const DistanceMatrix spatial = distance_matrix(*st.mesh, conformal_reduce(st).sigma, verts);

    for (int k = 0; k < pair_count; ++k) {
        OracleCheckRow row;
        row.p = ps[std::size_t(k)];
        row.q = qs[std::size_t(k)];
        row.formula = null_distance_static(spatial, row.p, row.q);
        row.oracle = null_distance_oracle(grid, row.p, row.q);
        row.diff = row.oracle - row.formula;
        row.tol = rel_tol * row.formula + out.cell;
        row.ok = std::fabs(row.diff) <= row.tol;
        out.max_diff = std::max(out.max_diff, std::fabs(row.diff));
        out.pass = out.pass && row.ok;
        out.rows.push_back(row);
    }
    return out;
}

std::vector<UniformRow> uniform_ladder(const std::string& example,
                                       const std::vector<double>& ladder, int level,
                                       double profile_lambda, const SampleSizes& sizes,
                                       std::uint64_t seed) {
    std::vector<UniformRow> rows;
    const std::vector<double> times = dyadic_times(0.0, 1.0, sizes.times);
    for (double j : ladder) {
        FamilyParams p;
        p.j = j;
        p.level = level;
        p.lambda = profile_lambda;
        auto mesh = make_family_mesh(example, p);
        const std::vector<int> verts = sample_vertices(*mesh, sizes.spatial, seed);
        const DistanceMatrix d_j = slab_null(*mesh, member_sigma(example, p, mesh), verts, times);
        const DistanceMatrix d_flat =
            slab_null(*mesh, make_family_limit(mesh).sigma, verts, times);
        UniformRow row;
        row.j = j;
        row.uniform = uniform_distance(d_j, d_flat);
        row.gh_upper = gh_upper_from_uniform(d_j, d_flat);
        rows.push_back(row);
    }
    return rows;
}

std::vector<GhLadderRow> gh_to_limit(const std::string& example, const std::vector<double>& ladder,
                                     int level, double profile_lambda, const SampleSizes& sizes,
                                     std::uint64_t seed) {
    std::vector<GhLadderRow> rows;
    for (double j : ladder) {
        FamilyParams p;
        p.j = j;
        p.level = level;
        p.lambda = profile_lambda;
        auto mesh = make_family_mesh(example, p);
        LimitParams lp;
        lp.times = dyadic_times(0.0, 1.0, sizes.times);
        lp.max_spatial = sizes.spatial;
        lp.lambda = profile_lambda;
        lp.seed = seed;
        const LimitSpace limit = build_limit_space(example, *mesh, lp);
        const DistanceMatrix d_j =
            slab_null(*mesh, member_sigma(example, p, mesh), limit.slab_rows, limit.times);
        const GhMapBound gb =
            gh_upper_via_map(d_j, limit.space.quotient, limit_correspondence(limit, *mesh, j));
        rows.push_back({j, gb.bound, gb.distortion, gb.covering_radius});
    }
    return rows;
}

HolderResult holder_run(const std::string& example, double j, double profile_lambda, double p,
                        int min_level, int max_level, const SampleSizes& sizes,
                        std::uint64_t seed) {
    if (!(p > 2.0))
        throw std::invalid_argument("integral exponent must exceed the spatial dimension");
    if (min_level > max_level) throw std::invalid_argument("level range is reversed");
    HolderResult out;
    out.p = p;
    out.alpha = (p - 2.0) / p;
    const std::vector<double> times = dyadic_times(0.0, 1.0, sizes.times);
    for (int level = min_level; level <= max_level; ++level) {
        FamilyParams fp;
        fp.j = j;
        fp.level = level;
        fp.lambda = profile_lambda;
        auto mesh = make_family_mesh(example, fp);
        const std::vector<int> verts = sample_vertices(*mesh, sizes.spatial, seed);
        const MetricField sigma_j = member_sigma(example, fp, mesh);
        const MetricField sigma_0 = MetricField::euclidean(*mesh);
        const DistanceMatrix d1 = distance_matrix(*mesh, sigma_j, verts);
        const DistanceMatrix d0 = distance_matrix(*mesh, sigma_0, verts);
        const HolderFit fit = holder_fit(d0, d1, out.alpha);
        std::vector<int> idx(verts.size());
        std::iota(idx.begin(), idx.end(), 0);
        const auto samples = slab_samples(idx, times);
        const HolderFit slab_fit =
            holder_fit(null_matrix(d0, samples), null_matrix(d1, samples), out.alpha);
        HolderRow row;
        row.level = level;
        row.constant = fit.constant;
        row.slab_constant = slab_fit.constant;
        row.unbounded = fit.unbounded || slab_fit.unbounded;
        out.rows.push_back(row);
        if (level == max_level) out.lp_norm = lp_tensor_norm(*mesh, sigma_j, sigma_0, p);
    }
    return out;
}

std::vector<LowerBoundRow> lower_bound_run(const std::vector<double>& ladder, int level,
                                           const SampleSizes& sizes, std::uint64_t seed) {
    auto mesh = std::make_shared<const SpatialMesh>(make_disk_mesh(level));
    const std::vector<int> verts = sample_vertices(*mesh, sizes.spatial, seed);
    const std::vector<double> times = dyadic_times(0.0, 1.0, sizes.times);
    const MetricField sigma_inf = MetricField::euclidean(*mesh);
    const DistanceMatrix d_inf = slab_null(*mesh, sigma_inf, verts, times);
    const double diam = diameter(d_inf);

    std::vector<LowerBoundRow> rows;
    for (double j : ladder) {
        if (!(j >= 2.0)) throw std::invalid_argument("sequence index j must be at least 2");
        MetricField sigma_j = sigma_inf;
        for (double& v : sigma_j.values) v *= 1.0 - 1.0 / j;
        const DistanceMatrix d_j = slab_null(*mesh, sigma_j, verts, times);
        LowerBoundRow row;
        row.j = j;
        row.analytic = (1.0 - std::sqrt(1.0 - 1.0 / j)) * diam;
        const LowerBoundReport rep = lower_bound_check(d_j, d_inf, row.analytic + 1e-12);
        row.violation = rep.max_violation;
        row.margin = rep.margin;
        row.ok = rep.ok;
        rows.push_back(row);
    }
    return rows;
}

std::vector<LowerBoundRow> lower_bound_family(const std::string& example,
                                              const std::vector<double>& ladder, int level,
                                              double profile_lambda, const SampleSizes& sizes,
                                              std::uint64_t seed) {
    const std::vector<double> times = dyadic_times(0.0, 1.0, sizes.times);
    std::vector<LowerBoundRow> rows;
    for (double j : ladder) {
        FamilyParams p;
        p.j = j;
        p.level = level;
        p.lambda = profile_lambda;
        auto mesh = make_family_mesh(example, p);
        const std::vector<int> verts = sample_vertices(*mesh, sizes.spatial, seed);
        const DistanceMatrix d_j = slab_null(*mesh, member_sigma(example, p, mesh), verts, times);
        const DistanceMatrix d_flat =
            slab_null(*mesh, make_family_limit(mesh).sigma, verts, times);
        const LowerBoundReport rep = lower_bound_check(d_j, d_flat, 0.0);
        LowerBoundRow row;
        row.j = j;
        row.violation = rep.max_violation;
        row.analytic = 0.0;
        row.margin = rep.max_violation;
        row.ok = rep.max_violation >= 1e-3;  // the control must keep undershooting
        rows.push_back(row);
    }
    return rows;
}

std::vector<SwifRow> swif_run(const std::string& example, const std::vector<double>& ladder,
                              int level, double profile_lambda, double lambda, double kappa,
                              const SampleSizes& sizes, std::uint64_t seed) {
    (void)sizes;
    (void)seed;  // the pipeline is exhaustive over mesh vertices
    std::vector<SwifRow> rows;
    for (double j : ladder) {
        FamilyParams p;
        p.j = j;
        p.level = level;
        p.lambda = profile_lambda;
        auto mesh = make_family_mesh(example, p);
        SwifCase c;
        c.j = j;
        c.slab = make_family_spacetime(example, p, mesh);
        const auto part = swif_pipeline({c}, make_family_limit(mesh), lambda, kappa);
        rows.push_back(part.front());
    }
    return rows;
}

std::vector<PointwiseRow> pointwise_run(const std::string& example,
                                        const std::vector<double>& ladder, int level,
                                        double profile_lambda, double eps,
                                        const SampleSizes& sizes, std::uint64_t seed) {
    if (!(eps > 0.0)) throw std::invalid_argument("pointwise tolerance must be positive");
    const std::vector<double> times = dyadic_times(0.0, 1.0, sizes.times);
    std::vector<PointwiseRow> rows;
    for (double j : ladder) {
        FamilyParams p;
        p.j = j;
        p.level = level;
        p.lambda = profile_lambda;
        auto mesh = make_family_mesh(example, p);
        const std::vector<int> verts = sample_vertices(*mesh, sizes.spatial, seed);
        const DistanceMatrix d_j = slab_null(*mesh, member_sigma(example, p, mesh), verts, times);
        const DistanceMatrix d_flat =
            slab_null(*mesh, make_family_limit(mesh).sigma, verts, times);
        const auto pairs = seeded_pairs(d_j.n(), sizes.pairs, seed);
        const PointwiseReport rep = pointwise_report({&d_j}, d_flat, pairs, eps);
        rows.push_back({j, rep.fraction_within.front()});
    }
    return rows;
}

}  // namespace nullgeo
