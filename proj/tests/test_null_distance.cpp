#include <cmath>
#include <vector>

#include "doctest.h"
#include "nullgeo/null_distance.hpp"
#include "nullgeo/rng.hpp"

using namespace nullgeo;

TEST_CASE("closed form equals the excess form and is exact on each branch") {
    Rng rng{2024};
    for (int trial = 0; trial < 500; ++trial) {
        const double d = 2.0 * rng.u01();
        const double t = 3.0 * rng.u01() - 1.0;
        const double s = 3.0 * rng.u01() - 1.0;
        const double v = null_distance_static(d, t, s);
        const double excess_form = d + std::max(0.0, std::fabs(t - s) - d);
        CHECK(v == doctest::Approx(excess_form).epsilon(1e-15));
        // branch values and symmetry are exact, not approximate
        CHECK(v == std::max(d, std::fabs(t - s)));
        CHECK(v == null_distance_static(d, s, t));
        CHECK(v >= 0.0);
    }
    CHECK(null_distance_static(0.0, 0.5, 0.5) == 0.0);
    CHECK(null_distance_static(0.3, 0.5, 0.5) == 0.3);
    CHECK(null_distance_static(0.3, 0.0, 0.9) == 0.9);
    CHECK_THROWS_AS(null_distance_static(-1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("matrix overload looks rows up by vertex") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const std::vector<int> pick = {0, 4, 11, 20};
    const DistanceMatrix d = distance_matrix(m, eye, pick);
    const SpacetimePoint p{0.25, 4}, q{0.75, 20};
    CHECK(null_distance_static(d, p, q) == std::max(d.at(1, 3), 0.5));
    CHECK_THROWS_AS(null_distance_static(d, SpacetimePoint{0.0, 1}, q), std::invalid_argument);
}

TEST_CASE("slab samples are time major") {
    const std::vector<SlabPoint> s = slab_samples({3, 7}, {0.0, 0.5});
    REQUIRE(s.size() == 4);
    CHECK(s[0].time == 0.0);
    CHECK(s[0].spatial == 3);
    CHECK(s[1].spatial == 7);
    CHECK(s[2].time == 0.5);
    CHECK(s[2].spatial == 3);
}

TEST_CASE("null matrix keeps the exact axioms for dyadic times") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    std::vector<int> pick;
    for (int v = 0; v < int(m.vertex_count()); v += 2) pick.push_back(v);
    const DistanceMatrix spatial = distance_matrix(m, eye, pick);
    std::vector<int> rows(spatial.n());
    for (int i = 0; i < spatial.n(); ++i) rows[i] = i;
    const std::vector<double> times = {0.0, 0.25, 0.5, 0.875, 1.0};
    const DistanceMatrix d = null_matrix(spatial, slab_samples(rows, times));
    const int n = d.n();
    REQUIRE(n == spatial.n() * int(times.size()));
    for (int i = 0; i < n; ++i) {
        CHECK(d.at(i, i) == 0.0);
        for (int j = 0; j < n; ++j) CHECK(d.at(i, j) == d.at(j, i));
    }
    std::size_t violations = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d.at(i, k) > d.at(i, j) + d.at(j, k)) ++violations;
    CHECK(violations == 0);
    // spot values against the closed form
    CHECK(d.at(0, 1) == spatial.at(0, 1));
    const int shift = spatial.n();
    CHECK(d.at(0, shift) == 0.25);
    CHECK(d.at(3, 3 + shift) == std::max(0.25, 0.0));
}

TEST_CASE("null length sums time variation over causal segments") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const DistanceMatrix d = distance_matrix(m, eye);
    // a pair within 0.7: up 0.75, back down 0.75 is causal both ways
    int a = -1, b = -1;
    for (int i = 0; i < d.n() && a < 0; ++i)
        for (int j = i + 1; j < d.n(); ++j)
            if (d.at(i, j) >= 0.1 && d.at(i, j) <= 0.7) {
                a = i;
                b = j;
                break;
            }
    REQUIRE(a >= 0);
    PiecewiseCausalPath path;
    path.points = {{0.0, a}, {0.75, b}, {0.0, a}};
    path.orientations = {Orientation::Future, Orientation::Past};
    CHECK(null_length(path, d) == 1.5);

    PiecewiseCausalPath single;
    single.points = {{0.25, a}};
    CHECK(null_length(single, d) == 0.0);
}

TEST_CASE("null length rejects acausal or misordered segments") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const DistanceMatrix d = distance_matrix(m, eye);

    int a = -1, b = -1;
    for (int i = 0; i < d.n() && a < 0; ++i)
        for (int j = i + 1; j < d.n(); ++j)
            if (d.at(i, j) >= 0.1 && d.at(i, j) <= 0.7) {
                a = i;
                b = j;
                break;
            }
    REQUIRE(a >= 0);

    PiecewiseCausalPath flat_jump;
    flat_jump.points = {{0.0, a}, {1.0, b}, {1.0, a}};
    flat_jump.orientations = {Orientation::Future, Orientation::Future};
    try {
        null_length(flat_jump, d);
        FAIL("expected CausalityError");
    } catch (const CausalityError& e) {
        CHECK(e.segment == 1);
    }

    PiecewiseCausalPath spacelike;
    spacelike.points = {{0.0, a}, {0.01, b}};
    spacelike.orientations = {Orientation::Future};
    CHECK_THROWS_AS(null_length(spacelike, d), CausalityError);

    PiecewiseCausalPath misflagged;
    misflagged.points = {{0.0, a}, {1.0, b}};
    misflagged.orientations = {Orientation::Past};
    CHECK_THROWS_AS(null_length(misflagged, d), CausalityError);

    PiecewiseCausalPath bad_shape;
    bad_shape.points = {{0.0, a}, {1.0, b}};
    CHECK_THROWS_AS(null_length(bad_shape, d), std::invalid_argument);
}
