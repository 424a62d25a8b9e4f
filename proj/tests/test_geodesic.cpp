#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "nullgeo/geodesic.hpp"
#include "nullgeo/metric.hpp"
#include "oracles.hpp"

using namespace nullgeo;

namespace {
int nearest_vertex(const SpatialMesh& m, double x, double y) {
    int best = 0;
    double best_d = 1e300;
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
        const double dx = m.coords[2 * v] - x;
        const double dy = m.coords[2 * v + 1] - y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d) {
            best_d = d2;
            best = static_cast<int>(v);
        }
    }
    return best;
}
}  // namespace

TEST_CASE("antipodal flat distance is close to the euclidean value") {
    const SpatialMesh m = make_disk_mesh(2);
    const MetricField eye = MetricField::euclidean(m);
    const int p = nearest_vertex(m, 1.0, 0.0);
    const int q = nearest_vertex(m, -1.0, 0.0);
    REQUIRE(m.coords[2 * std::size_t(p)] == 1.0);
    REQUIRE(m.coords[2 * std::size_t(q)] == -1.0);
    const DistanceMatrix d = distance_matrix(m, eye, {p, q});
    REQUIRE(d.n() == 2);
    CHECK(d.at(0, 1) >= 2.0 - 1e-9);
    CHECK(d.at(0, 1) <= 2.0 * 1.02);
    CHECK(diameter(d) == d.at(0, 1));
}

TEST_CASE("distance matrix satisfies the axioms exactly") {
    const SpatialMesh m = make_disk_mesh(1);
    const MetricField eye = MetricField::euclidean(m);
    std::vector<int> pick;
    for (int v = 0; v < static_cast<int>(m.vertex_count()); v += 3) pick.push_back(v);
    const DistanceMatrix d = distance_matrix(m, eye, pick);
    const int n = d.n();
    REQUIRE(n >= 50);
    for (int i = 0; i < n; ++i) {
        CHECK(d.at(i, i) == 0.0);
        for (int j = 0; j < n; ++j) {
            if (i != j) CHECK(d.at(i, j) > 0.0);
            // symmetry must be bitwise, not approximate
            CHECK(d.at(i, j) == d.at(j, i));
        }
    }
    std::size_t violations = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d.at(i, k) > d.at(i, j) + d.at(j, k)) ++violations;
    CHECK(violations == 0);
}

TEST_CASE("scaling the metric by four doubles every distance bitwise") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const double four[4] = {4, 0, 0, 4};
    const MetricField big = MetricField::constant(m, four);
    const DistanceMatrix d1 = distance_matrix(m, eye);
    const DistanceMatrix d2 = distance_matrix(m, big);
    REQUIRE(d1.values.size() == d2.values.size());
    for (std::size_t i = 0; i < d1.values.size(); ++i) CHECK(d2.values[i] == 2.0 * d1.values[i]);
}

TEST_CASE("distances are monotone in the metric") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const double c[4] = {1.21, 0, 0, 1.21};
    const DistanceMatrix d1 = distance_matrix(m, eye);
    const DistanceMatrix d2 = distance_matrix(m, MetricField::constant(m, c));
    for (std::size_t i = 0; i < d1.values.size(); ++i)
        CHECK(d2.values[i] >= d1.values[i] * (1 - 1e-15));
}

TEST_CASE("closure finalize repairs rounding level violations and keeps symmetry") {
    DistanceMatrix d;
    d.points = {PointKey{0}, PointKey{1}, PointKey{2}};
    // d02 slightly above the rounded sum d01 + d12
    const double a = 0.1, b = 0.2;
    const double s = a + b;
    d.values = {0, a, std::nextafter(s, 1.0), a, 0, b, std::nextafter(s, 1.0), b, 0};
    closure_finalize(d);
    CHECK(d.at(0, 2) == s);
    CHECK(d.at(0, 2) == d.at(2, 0));
    CHECK(d.at(0, 1) == a);
}

TEST_CASE("distance matrix round trips through csv") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const std::vector<int> pick = {0, 5, 9, 17, 30};
    const DistanceMatrix d = distance_matrix(m, eye, pick);
    const std::string text = to_csv(d);
    const DistanceMatrix back = matrix_from_csv(text);
    REQUIRE(back.n() == d.n());
    for (int i = 0; i < d.n(); ++i) {
        CHECK(back.points[i].vertex == d.points[i].vertex);
        CHECK(back.points[i].has_time() == d.points[i].has_time());
    }
    CHECK(back.values == d.values);
}

TEST_CASE("shortest paths from a source match the matrix row") {
    const SpatialMesh m = make_disk_mesh(0);
    const MetricField eye = MetricField::euclidean(m);
    const DistanceMatrix d = distance_matrix(m, eye);
    const EdgeGraph g = build_edge_graph(m, eye);
    const std::vector<double> dist = shortest_paths(g, 7);
    // closure may only lower matrix entries relative to raw graph distances
    for (int v = 0; v < static_cast<int>(m.vertex_count()); ++v) {
        CHECK(d.at(7, v) <= dist[std::size_t(v)] * (1 + 1e-15));
        CHECK(d.at(7, v) >= dist[std::size_t(v)] * (1 - 1e-12));
    }
}
