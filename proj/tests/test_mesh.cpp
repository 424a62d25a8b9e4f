#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "nullgeo/mesh.hpp"
#include "oracles.hpp"

using namespace nullgeo;

TEST_CASE("cartesian disk basic shape and growth") {
    const SpatialMesh m0 = make_disk_mesh(0);
    const SpatialMesh m1 = make_disk_mesh(1);
    CHECK(m0.vertex_count() >= 40);
    CHECK(m0.vertex_count() <= 70);
    CHECK(m1.vertex_count() >= 3 * m0.vertex_count());
    CHECK(m1.vertex_count() <= 5 * m0.vertex_count());
    CHECK(m0.target_spacing == 0.3125);
    CHECK(m1.target_spacing == 0.15625);
}

TEST_CASE("cell weights partition the disk area") {
    for (int level : {0, 1, 2}) {
        const SpatialMesh m = make_disk_mesh(level);
        double total = 0.0;
        for (double w : m.cell_weights) {
            CHECK(w > 0.0);
            total += w;
        }
        CHECK(total == doctest::Approx(oracles::kPi).epsilon(1e-9));
    }
}

TEST_CASE("refinement embeds every vertex with identical coordinates") {
    const SpatialMesh coarse = make_disk_mesh(1);
    const SpatialMesh fine = refine(coarse);
    CHECK(fine.spec.level == 2);
    const std::vector<int> map = embed_map(coarse, fine);
    for (std::size_t v = 0; v < coarse.vertex_count(); ++v) {
        CHECK(fine.coords[2 * map[v]] == coarse.coords[2 * v]);
        CHECK(fine.coords[2 * map[v] + 1] == coarse.coords[2 * v + 1]);
        // boundary status survives refinement
        CHECK(int(fine.is_boundary[map[v]]) == int(coarse.is_boundary[v]));
    }
}

TEST_CASE("polar disk hits requested breakpoints exactly") {
    const std::vector<double> breaks{0.85, 0.9};
    const SpatialMesh m = make_polar_disk_mesh(0, breaks);
    std::set<double> radii(m.radial.begin(), m.radial.end());
    CHECK(radii.count(0.85) == 1);
    CHECK(radii.count(0.9) == 1);
    CHECK(radii.count(1.0) == 1);
    CHECK(radii.count(0.0) == 1);
    // at least four rings per region
    const auto rings_in = [&](double lo, double hi) {
        int c = 0;
        for (double r : radii)
            if (r > lo + 1e-15 && r <= hi + 1e-15) ++c;
        return c;
    };
    CHECK(rings_in(0.0, 0.85) >= 4);
    CHECK(rings_in(0.85, 0.9) >= 4);
    CHECK(rings_in(0.9, 1.0) >= 4);
    double total = 0.0;
    for (double w : m.cell_weights) total += w;
    CHECK(total == doctest::Approx(oracles::kPi).epsilon(1e-12));
}

TEST_CASE("polar refinement nests and doubles sectors") {
    const std::vector<double> breaks{0.1, 0.5};
    const SpatialMesh coarse = make_polar_disk_mesh(0, breaks);
    const SpatialMesh fine = refine(coarse);
    const std::vector<int> map = embed_map(coarse, fine);  // throws on failure
    CHECK(map.size() == coarse.vertex_count());
    CHECK(fine.boundary_vertices.size() == 2 * coarse.boundary_vertices.size());
}

TEST_CASE("log spacing kicks in for wide radial regions") {
    // region [1e-4, 0.5] has ratio 5000 > 8; expect geometric-ish rings
    const SpatialMesh m = make_polar_disk_mesh(0, {1e-4, 0.5});
    std::set<double> radii(m.radial.begin(), m.radial.end());
    std::vector<double> in_region;
    for (double r : radii)
        if (r >= 1e-4 && r <= 0.5) in_region.push_back(r);
    REQUIRE(in_region.size() >= 5);
    // ratios between consecutive rings stay bounded (log spacing), far below
    // what uniform spacing of so wide a region would give at this count
    for (std::size_t i = 0; i + 1 < in_region.size(); ++i)
        CHECK(in_region[i + 1] / in_region[i] <= 1.6);
}

TEST_CASE("mesh validation flags tampering") {
    SpatialMesh m = make_disk_mesh(0);
    m.cell_weights[0] = -1.0;
    CHECK_THROWS_AS(validate_mesh(m), std::invalid_argument);
    m = make_disk_mesh(0);
    m.edges.clear();
    CHECK_THROWS_AS(validate_mesh(m), std::invalid_argument);
}

TEST_CASE("vertex cap triggers explicit failure") {
    CHECK_THROWS_AS(make_disk_mesh(7), std::length_error);
}
