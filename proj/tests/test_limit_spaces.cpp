#include "doctest.h"
#include "oracles.hpp"

#include "nullgeo/families.hpp"
#include "nullgeo/limit_spaces.hpp"
#include "nullgeo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace nullgeo;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent all-pairs oracle over the glued union: dense Dijkstra where the
// component matrices are direct edge weights and every identification is a
// zero-weight edge. The quotient closure must reproduce these values.
std::vector<std::vector<double>> union_shortest_paths(const GluedSpace& gs) {
    const int n = gs.quotient.n();
    const auto comp_of = [&](int row) {
        int c = int(gs.offsets.size()) - 1;
        while (gs.offsets[std::size_t(c)] > row) --c;
        return c;
    };
    std::vector<std::vector<double>> all;
    all.reserve(std::size_t(n));
    for (int src = 0; src < n; ++src) {
        std::vector<double> dist(std::size_t(n), kInf);
        std::vector<char> done(std::size_t(n), 0);
        dist[std::size_t(src)] = 0.0;
        for (int round = 0; round < n; ++round) {
            int u = -1;
            double best = kInf;
            for (int k = 0; k < n; ++k)
                if (!done[std::size_t(k)] && dist[std::size_t(k)] < best) {
                    best = dist[std::size_t(k)];
                    u = k;
                }
            if (u < 0) break;
            done[std::size_t(u)] = 1;
            const int c = comp_of(u);
            const DistanceMatrix& m = gs.components[std::size_t(c)];
            const int iu = u - gs.offsets[std::size_t(c)];
            for (int iv = 0; iv < m.n(); ++iv) {
                const int v = gs.offsets[std::size_t(c)] + iv;
                const double cand = dist[std::size_t(u)] + m.at(iu, iv);
                if (cand < dist[std::size_t(v)]) dist[std::size_t(v)] = cand;
            }
            for (const auto& id : gs.identifications) {
                const int ra = gs.row(id.first), rb = gs.row(id.second);
                if (ra == u && dist[std::size_t(u)] < dist[std::size_t(rb)])
                    dist[std::size_t(rb)] = dist[std::size_t(u)];
                if (rb == u && dist[std::size_t(u)] < dist[std::size_t(ra)])
                    dist[std::size_t(ra)] = dist[std::size_t(u)];
            }
        }
        all.push_back(std::move(dist));
    }
    return all;
}

void check_matches_union_oracle(const GluedSpace& gs) {
    const auto oracle = union_shortest_paths(gs);
    const int n = gs.quotient.n();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::fabs(gs.quotient.at(i, j) - oracle[std::size_t(i)][std::size_t(j)]));
    CHECK(worst <= 1e-12);
}

void check_axiom_sample(const DistanceMatrix& m, int triples, unsigned long long seed) {
    Rng rng{seed};
    const int n = m.n();
    for (int k = 0; k < triples; ++k) {
        const int a = int(rng.below(std::uint64_t(n)));
        const int b = int(rng.below(std::uint64_t(n)));
        const int c = int(rng.below(std::uint64_t(n)));
        CHECK(m.at(a, a) == 0.0);
        CHECK(m.at(a, b) == m.at(b, a));
        CHECK(m.at(a, c) <= m.at(a, b) + m.at(b, c));
    }
}

DistanceMatrix from_values(std::vector<double> values) {
    DistanceMatrix m;
    const std::size_t n = std::size_t(std::lround(std::sqrt(double(values.size()))));
    m.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.points[i] = PointKey{int(i)};
    m.values = std::move(values);
    return m;
}

}  // namespace

TEST_CASE("glued space: quotient equals the union shortest-path oracle") {
    // 3-point chain glued at its far end to a 2-point pair
    auto c0 = from_values({0.0, 1.0, 2.5, 1.0, 0.0, 1.5, 2.5, 1.5, 0.0});
    auto c1 = from_values({0.0, 0.7, 0.7, 0.0});
    GluedSpace gs = make_glued_space({c0, c1}, {{{0, 2}, {1, 0}}});
    REQUIRE(gs.quotient.n() == 5);
    CHECK(gs.offsets == std::vector<int>{0, 3, 5});
    CHECK(glued_distance(gs, {0, 2}, {1, 0}) == 0.0);
    CHECK(glued_distance(gs, {0, 0}, {1, 1}) == doctest::Approx(3.2).epsilon(1e-15));
    CHECK(glued_distance(gs, {0, 1}, {1, 1}) == doctest::Approx(2.2).epsilon(1e-15));
    // gluing never lengthens a component distance
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(gs.quotient.at(i, j) <= c0.at(i, j) + 1e-15);
    check_matches_union_oracle(gs);
    check_axiom_sample(gs.quotient, 200, 7);

    SUBCASE("validation") {
        CHECK_THROWS_AS(make_glued_space({}, {}), std::invalid_argument);
        CHECK_THROWS_AS(make_glued_space({c0, c1}, {}), std::runtime_error);  // no bridge
        CHECK_THROWS_AS(make_glued_space({c0, c1}, {{{0, 2}, {2, 0}}}), std::out_of_range);
        CHECK_THROWS_AS(make_glued_space({c0, c1}, {{{0, 3}, {1, 0}}}), std::out_of_range);
        CHECK_THROWS_AS(glued_distance(gs, {0, 0}, {2, 0}), std::out_of_range);
        CHECK_THROWS_AS(glued_distance(gs, {0, 5}, {1, 0}), std::out_of_range);
    }
}

TEST_CASE("boundary-collapse limit: collapsed circles form an isometric time interval") {
    FamilyParams fp;
    fp.j = 10.0;
    auto mesh = make_family_mesh("ex31-space-collapse", fp);
    LimitParams lp;
    lp.times = {0.0, 0.25, 0.5, 0.75, 1.0};
    lp.max_spatial = 40;
    const LimitSpace L = build_limit_space("ex31-space-collapse", *mesh, lp);
    const int R = int(L.slab_rows.size());
    const int T = int(L.times.size());
    REQUIRE(L.space.quotient.n() == R * T);
    REQUIRE(R <= lp.max_spatial);

    // sample rows always include the center and the whole boundary ring
    std::vector<int> boundary_pos;
    int center_pos = -1;
    int boundary_total = 0;
    for (std::size_t v = 0; v < mesh->vertex_count(); ++v)
        if (mesh->is_boundary[v]) ++boundary_total;
    for (int i = 0; i < R; ++i) {
        const std::size_t v = std::size_t(L.slab_rows[std::size_t(i)]);
        if (mesh->is_boundary[v]) boundary_pos.push_back(i);
        if (mesh->radial[v] <= 1e-12) center_pos = i;
    }
    CHECK(int(boundary_pos.size()) == boundary_total);
    REQUIRE(center_pos >= 0);

    const auto at = [&](int t, int pos) { return ComponentRef{0, t * R + pos}; };
    // every boundary pair at times t, s sits at distance exactly |t - s|
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < T; ++s) {
            const double want = std::fabs(L.times[std::size_t(t)] - L.times[std::size_t(s)]);
            const double got = glued_distance(L.space, at(t, boundary_pos[0]),
                                              at(s, boundary_pos[boundary_pos.size() / 2]));
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    // the center is too far from the boundary for the collapse to shortcut it
    CHECK(glued_distance(L.space, at(0, center_pos), at(4, center_pos)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(glued_distance(L.space, at(0, center_pos), at(0, boundary_pos[0])) ==
          doctest::Approx(1.0).epsilon(0.02));

    check_matches_union_oracle(L.space);
    check_axiom_sample(L.space.quotient, 300, 11);

    // the projection of the family onto this limit is the row identity
    const auto corr = limit_correspondence(L, *mesh, fp.j);
    REQUIRE(int(corr.size()) == R * T);
    for (std::size_t k = 0; k < corr.size(); ++k) CHECK(corr[k] == int(k));

    SUBCASE("deterministic rebuild") {
        const LimitSpace again = build_limit_space("ex31-space-collapse", *mesh, lp);
        CHECK(again.slab_rows == L.slab_rows);
        CHECK(again.space.quotient.values == L.space.quotient.values);
    }
    SUBCASE("validation") {
        LimitParams bad = lp;
        bad.times = {};
        CHECK_THROWS_AS(build_limit_space("ex31-space-collapse", *mesh, bad),
                        std::invalid_argument);
        bad.times = {0.0, 1.5};
        CHECK_THROWS_AS(build_limit_space("ex31-space-collapse", *mesh, bad),
                        std::invalid_argument);
        bad = lp;
        bad.max_spatial = 4;
        CHECK_THROWS_AS(build_limit_space("ex31-space-collapse", *mesh, bad),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_limit_space("ex39", *mesh, lp), std::invalid_argument);
        CHECK_THROWS_AS(limit_correspondence(L, *mesh, 1.5), std::invalid_argument);
    }
}

TEST_CASE("bubble limit: unit-scale copy hangs off the outer center") {
    FamilyParams fp;
    fp.j = 10.0;
    auto mesh = make_family_mesh("ex33-bubble", fp);
    LimitParams lp;
    lp.times = {0.0, 0.5, 1.0};
    lp.max_spatial = 40;
    const LimitSpace L = build_limit_space("ex33-bubble", *mesh, lp);
    REQUIRE(L.space.components.size() == 2);
    const int R = int(L.slab_rows.size());
    int center_pos = -1, bpos = -1;
    for (int i = 0; i < R; ++i) {
        const std::size_t v = std::size_t(L.slab_rows[std::size_t(i)]);
        if (mesh->radial[v] <= 1e-12) center_pos = i;
        if (bpos < 0 && mesh->is_boundary[v]) bpos = i;
    }
    REQUIRE(center_pos >= 0);
    REQUIRE(bpos >= 0);

    // copy boundary sits on the outer center, so the two centers are one
    // unit-disk radius apart and copy center to outer boundary is two
    CHECK(glued_distance(L.space, {1, center_pos}, {0, center_pos}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(glued_distance(L.space, {1, center_pos}, {0, bpos}) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // one diagonal hop inside the copy absorbs the half-unit time shift
    CHECK(glued_distance(L.space, {1, center_pos}, {0, 1 * R + center_pos}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    check_matches_union_oracle(L.space);
    check_axiom_sample(L.space.quotient, 300, 13);

    // projection: deep vertices land in the scaled copy, the bridge pinches
    // onto the gluing point, the rest stays put
    const auto corr = limit_correspondence(L, *mesh, fp.j);
    const int T = int(L.times.size());
    REQUIRE(int(corr.size()) == R * T);
    for (int t = 0; t < T; ++t)
        for (int i = 0; i < R; ++i) {
            const std::size_t v = std::size_t(L.slab_rows[std::size_t(i)]);
            const double rj = mesh->radial[v] * fp.j;
            const int got = corr[std::size_t(t * R + i)];
            CHECK(got >= 0);
            CHECK(got < L.space.quotient.n());
            if (rj <= 1.0) {
                CHECK(got >= L.space.offsets[1]);  // inside the copy
            } else if (rj < 1.5) {
                CHECK(got == L.space.row({0, t * R + center_pos}));
            } else {
                CHECK(got == L.space.row({0, t * R + i}));
            }
        }
}

TEST_CASE("spike limit: taxi square sewn to the center axis") {
    FamilyParams fp;
    fp.j = 100.0;
    fp.lambda = 1.2;
    auto mesh = make_family_mesh("ex34-spline", fp);
    LimitParams lp;
    lp.times = {0.0, 0.5, 1.0};
    lp.max_spatial = 40;
    lp.lambda = 1.2;
    lp.taxi_grid = 9;
    const LimitSpace L = build_limit_space("ex34-spline", *mesh, lp);
    REQUIRE(L.space.components.size() == 2);
    CHECK(L.taxi_lambda == 1.2);
    const int R = int(L.slab_rows.size());
    const int T = int(L.times.size());
    const int G = lp.taxi_grid;
    REQUIRE(L.space.components[1].n() == T * G);
    int center_pos = -1;
    for (int i = 0; i < R; ++i)
        if (mesh->radial[std::size_t(L.slab_rows[std::size_t(i)])] <= 1e-12) center_pos = i;
    REQUIRE(center_pos >= 0);

    // entering the square from the axis costs lambda per unit of depth
    for (int t = 0; t < T; ++t)
        for (int ui = 0; ui < G; ++ui) {
            const double u = double(ui) / double(G - 1);
            CHECK(glued_distance(L.space, {0, t * R + center_pos}, {1, t * G + ui}) ==
                  doctest::Approx(lp.lambda * (1.0 - u)).epsilon(1e-12));
        }
    // inside the square the metric is exactly |ds| + lambda |du|; the slab
    // detour costs lambda (2 - u - u') and never wins
    for (int a = 0; a < T * G; ++a)
        for (int b = 0; b < T * G; ++b) {
            const double ds = std::fabs(L.times[std::size_t(a / G)] - L.times[std::size_t(b / G)]);
            const double du = std::fabs(double(a % G) - double(b % G)) / double(G - 1);
            CHECK(glued_distance(L.space, {1, a}, {1, b}) ==
                  doctest::Approx(ds + lp.lambda * du).epsilon(1e-12));
        }

    check_matches_union_oracle(L.space);
    check_axiom_sample(L.space.quotient, 300, 17);

    // projection: spike vertices map to the depth the radial profile assigns
    const RadialProfile prof = family_spline(fp.j, fp.lambda);
    const auto corr = limit_correspondence(L, *mesh, fp.j);
    REQUIRE(int(corr.size()) == R * T);
    int deep = 0;
    for (int t = 0; t < T; ++t)
        for (int i = 0; i < R; ++i) {
            const std::size_t v = std::size_t(L.slab_rows[std::size_t(i)]);
            const double r = mesh->radial[v];
            const int got = corr[std::size_t(t * R + i)];
            if (r * fp.j < 1.0) {
                ++deep;
                const double depth = profile_radial_length(prof, r, 1.0 / fp.j);
                const double u = 1.0 - std::min(1.0, depth / lp.lambda);
                const int ui = int(std::lround(u * double(G - 1)));
                CHECK(got == L.space.offsets[1] + t * G + ui);
            } else {
                CHECK(got == t * R + i);
            }
        }
    CHECK(deep > 0);

    SUBCASE("square needs at least two levels per side") {
        LimitParams bad = lp;
        bad.taxi_grid = 1;
        CHECK_THROWS_AS(build_limit_space("ex34-spline", *mesh, bad), std::invalid_argument);
    }
}
