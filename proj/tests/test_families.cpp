#include "doctest.h"
#include "oracles.hpp"

#include "nullgeo/families.hpp"
#include "nullgeo/metric.hpp"
#include "nullgeo/mesh.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

using namespace nullgeo;

namespace {

double log_recip(double x) { return 1.0 / (x * (1.0 - std::log(x))); }

// 2*pi * int f(r)^p r dr, split at the profile's own breakpoints plus the
// clamp crossing of any exponential bridge.
double radial_power_norm(const RadialProfile& prof, double p) {
    std::vector<double> cuts = prof.breakpoint_radii();
    for (const auto& br : prof.branches) {
        if (br.form != RadialProfile::Form::ClampedExp || br.a <= 1.0) continue;
        double cross = br.lo + std::log(br.a) / br.b;
        if (prof.coord == RadialProfile::Coord::BoundaryDistance) cross = 1.0 - cross;
        if (cross > 0.0 && cross < 1.0) cuts.push_back(cross);
    }
    return 2.0 * oracles::kPi *
           oracles::integrate_piecewise(
               [&](double r) { return std::pow(prof.eval_at_radius(r), p) * r; }, 0.0, 1.0, cuts);
}

}  // namespace

TEST_CASE("space collapse profile: reciprocal bridge values") {
    const RadialProfile prof = family_no_control_space(2.0);
    CHECK(prof.coord == RadialProfile::Coord::BoundaryDistance);
    CHECK(prof.reciprocal);
    // boundary band f = 1/j, mid-bridge f = 1/1.5, interior f = 1
    CHECK(prof.eval_at_radius(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(prof.eval_at_radius(0.375) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(prof.eval_at_radius(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prof.eval_at_radius(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // breakpoints reported as radii
    const auto radii = prof.breakpoint_radii();
    REQUIRE(radii.size() == 2);
    CHECK(radii[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(radii[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("lapse blow-up profile: plateau then linear drop to one") {
    const RadialProfile prof = family_time_blowup(3.0);
    CHECK(prof.coord == RadialProfile::Coord::BoundaryDistance);
    CHECK_FALSE(prof.reciprocal);
    CHECK(prof.eval_at_radius(1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(prof.eval_at_radius(0.75) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(prof.eval_at_radius(1.0 - 5.0 / 12.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(prof.eval_at_radius(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prof.eval_at_radius(0.3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bubble profile: plateau j, exponential drop clamped at one") {
    const RadialProfile prof = family_bubble(10.0);
    CHECK(prof.coord == RadialProfile::Coord::Radius);
    CHECK(prof.eval(0.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(prof.eval(0.05) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(prof.eval(0.105) == doctest::Approx(10.0 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(prof.eval(0.2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(prof.eval(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("spline profile: branch constants reuse the log-reciprocal values") {
    const double j = 100.0, lam = 2.0;
    const RadialProfile prof = family_spline(j, lam);
    REQUIRE(prof.branches.size() == 4);
    const double rcap = std::pow(j, -lam);
    CHECK(prof.branches[0].hi == doctest::Approx(rcap).epsilon(1e-15));
    CHECK(prof.branches[1].form == RadialProfile::Form::LogReciprocal);
    CHECK(prof.branches[2].form == RadialProfile::Form::ClampedExp);
    CHECK(prof.branches[2].b == doctest::Approx(2.0 * j * j).epsilon(1e-15));
    // cap and bridge start are the middle branch's own endpoint values, so the
    // profile is continuous with zero residual
    CHECK(prof.branches[0].a == doctest::Approx(log_recip(rcap)).epsilon(1e-15));
    CHECK(prof.branches[2].a == doctest::Approx(log_recip(1.0 / j)).epsilon(1e-15));
    CHECK(prof.branches[0].a ==
          doctest::Approx(std::pow(j, lam) / (1.0 + lam * std::log(j))).epsilon(1e-14));
    CHECK(prof.branches[2].a == doctest::Approx(j / (1.0 + std::log(j))).epsilon(1e-14));
}

TEST_CASE("profiles are continuous across every breakpoint") {
    std::vector<RadialProfile> profs;
    profs.push_back(family_no_control_space(7.0));
    profs.push_back(family_time_blowup(7.0));
    profs.push_back(family_bubble(12.0));
    profs.push_back(family_spline(40.0, 1.7));
    for (const auto& prof : profs) {
        for (std::size_t b = 0; b + 1 < prof.branches.size(); ++b) {
            // window small enough that even the steepest bridge (slope ~ a*b)
            // moves by far less than the tolerance
            const double x = prof.branches[b].hi;
            const double left = prof.eval(x - 1e-12);
            const double right = prof.eval(x + 1e-12);
            const double scale = std::max(1.0, std::fabs(prof.eval(x)));
            CHECK(std::fabs(left - right) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(family_no_control_space(1.5), std::invalid_argument);
    CHECK_THROWS_AS(family_bubble(1.99), std::invalid_argument);
    CHECK_THROWS_AS(family_spline(10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(family_spline(10.0, 0.5), std::invalid_argument);
    const RadialProfile prof = family_bubble(10.0);
    CHECK_THROWS_AS(prof.eval(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(prof.eval(1.1), std::invalid_argument);
    CHECK(prof.eval(1.0 + 5e-13) == doctest::Approx(1.0));  // endpoint noise clamps
    CHECK_THROWS_AS(prof.integrate(0.5, 0.2), std::invalid_argument);
    FamilyParams p;
    CHECK_THROWS_WITH_AS(make_family_mesh("nope", p), "unknown example id: nope",
                         std::invalid_argument);
    CHECK(is_example_id("ex33-bubble"));
    CHECK_FALSE(is_example_id("ex35"));
}

TEST_CASE("bubble bridge integral stays below 1/j with excess below 1/(2j)") {
    for (double j : {10.0, 100.0}) {
        const RadialProfile prof = family_bubble(j);
        const double got = prof.integrate(1.0 / j, 1.5 / j);
        // exact split at the clamp crossing 1/j + ln(j)/(2j^2)
        const double closed = 1.0 / j - (1.0 + std::log(j)) / (2.0 * j * j);
        CHECK(got == doctest::Approx(closed).epsilon(1e-13));
        const double cross = 1.0 / j + std::log(j) / (2.0 * j * j);
        const double quad = oracles::integrate_piecewise(
            [&](double r) { return prof.eval(r); }, 1.0 / j, 1.5 / j, {cross});
        CHECK(got == doctest::Approx(quad).epsilon(1e-11));
        CHECK(got <= 1.0 / j);
        CHECK(got - 0.5 / j <= 0.5 / j);  // bridge exceeds its floor by at most 1/(2j)
    }
    CHECK(family_bubble(10.0).integrate(0.1, 0.15) ==
          doctest::Approx(0.0834870745350298).epsilon(1e-13));
    CHECK(family_bubble(100.0).integrate(0.01, 0.015) ==
          doctest::Approx(0.0097197414907006).epsilon(1e-12));
}

TEST_CASE("spline log-region radial length matches the closed form") {
    struct Row {
        double j, lam, frozen;
    };
    // ln((1 + lam ln j) / (1 + ln j)), the depth the log region contributes
    const Row rows[] = {
        {100.0, 1.2, 0.152136072149885},
        {100.0, 2.0, 0.599711549430897},
        {1e4, 1.2, 0.165863542294229},
        {1e4, 2.0, 0.642937547266327},
    };
    for (const Row& row : rows) {
        const RadialProfile prof = family_spline(row.j, row.lam);
        const double rcap = std::pow(row.j, -row.lam);
        const double got = profile_radial_length(prof, rcap, 1.0 / row.j);
        const double closed =
            std::log((1.0 + row.lam * std::log(row.j)) / (1.0 + std::log(row.j)));
        CHECK(got == doctest::Approx(closed).epsilon(1e-12));
        CHECK(got == doctest::Approx(row.frozen).epsilon(1e-12));
        const double quad = oracles::radial_length([&](double r) { return prof.eval(r); }, rcap,
                                                   1.0 / row.j, {});
        CHECK(got == doctest::Approx(quad).epsilon(1e-9));
    }
    // the depth approaches ln(lam) from below as j grows
    for (double lam : {1.2, 2.0}) {
        const double d4 = profile_radial_length(family_spline(1e4, lam), std::pow(1e4, -lam),
                                                1e-4);
        const double d2 = profile_radial_length(family_spline(100.0, lam),
                                                std::pow(100.0, -lam), 1e-2);
        CHECK(d2 < d4);
        CHECK(d4 < std::log(lam));
    }
}

TEST_CASE("collapse profile: center-to-boundary radial length") {
    const double j = 10.0;
    const RadialProfile prof = family_no_control_space(j);
    const double got = profile_radial_length(prof, 0.0, 1.0);
    // 1/j^2 (boundary band) + (1/2j) ln(j)/(j-1) (reciprocal-linear bridge) + 1 - 1.5/j
    const double closed = 1.0 / (j * j) + (0.5 / j) * std::log(j) / (j - 1.0) + 1.0 - 1.5 / j;
    CHECK(got == doctest::Approx(closed).epsilon(1e-13));
    CHECK(got == doctest::Approx(0.872792139405522).epsilon(1e-13));
    CHECK_THROWS_AS(profile_radial_length(prof, -0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(profile_radial_length(prof, 0.6, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(profile_radial_length(prof, 0.0, 1.2), std::invalid_argument);
}

TEST_CASE("spline disk volumes: quadrature oracle and log-region identity") {
    struct Row {
        double j, lam, frozen;
    };
    const Row rows[] = {
        {100.0, 1.2, 3.37373015215537},
        {1e4, 1.2, 3.25727416990711},
        {100.0, 2.0, 3.67749160943056},
        {1e4, 2.0, 3.4417677422539},
    };
    for (const Row& row : rows) {
        const RadialProfile prof = family_spline(row.j, row.lam);
        std::vector<double> cuts = prof.breakpoint_radii();
        cuts.push_back(1.0 / row.j +
                       std::log(row.j / (1.0 + std::log(row.j))) / (2.0 * row.j * row.j));
        const double vol =
            oracles::disk_volume([&](double r) { return prof.eval_at_radius(r); }, cuts);
        CHECK(vol == doctest::Approx(row.frozen).epsilon(1e-9));
        // log region alone contributes 2*pi*(1/(1+ln j) - 1/(1+lam ln j)); this tail
        // only decays like 1/ln j, so the volume sits well above pi at moderate j
        // (17% at j=100, lam=2) and squeezes under 5% only for slow lam by j=1e4
        const double rcap = std::pow(row.j, -row.lam);
        const double log_area =
            2.0 * oracles::kPi *
            oracles::integrate([&](double r) { return r * std::pow(prof.eval_at_radius(r), 2.0); },
                               rcap, 1.0 / row.j);
        const double closed = 2.0 * oracles::kPi *
                              (1.0 / (1.0 + std::log(row.j)) -
                               1.0 / (1.0 + row.lam * std::log(row.j)));
        CHECK(log_area == doctest::Approx(closed).epsilon(1e-10));
    }
    CHECK(rows[1].frozen < 1.05 * oracles::kPi);   // lam=1.2 is inside 5% by j=1e4
    CHECK(rows[2].frozen > 1.15 * oracles::kPi);   // lam=2 at j=100 is not
    CHECK(rows[1].frozen < rows[0].frozen);
    CHECK(rows[3].frozen < rows[2].frozen);
}

TEST_CASE("discrete volumes track the radial quadrature") {
    {
        FamilyParams p;
        p.j = 100.0;
        p.lambda = 2.0;
        p.level = 0;
        auto mesh = make_family_mesh("ex34-spline", p);
        auto st = make_family_spacetime("ex34-spline", p, mesh);
        CHECK(volume(*mesh, st.sigma) == doctest::Approx(3.67749160943056).epsilon(0.02));
    }
    {
        const double frozen = 6.31338831247527;  // bubble quadrature volume at j=50
        const RadialProfile prof = family_bubble(50.0);
        std::vector<double> cuts = prof.breakpoint_radii();
        cuts.push_back(0.02 + std::log(50.0) / 5000.0);
        CHECK(oracles::disk_volume([&](double r) { return prof.eval(r); }, cuts) ==
              doctest::Approx(frozen).epsilon(1e-9));
        CHECK(std::fabs(frozen - 2.0 * oracles::kPi) < 0.1);  // unit core + unit annulus
        FamilyParams p;
        p.j = 50.0;
        double err[2];
        for (int level : {0, 1}) {
            p.level = level;
            auto mesh = make_family_mesh("ex33-bubble", p);
            auto st = make_family_spacetime("ex33-bubble", p, mesh);
            const double vol = volume(*mesh, st.sigma);
            err[level] = std::fabs(vol - frozen);
            CHECK(vol == doctest::Approx(frozen).epsilon(level == 0 ? 0.08 : 0.04));
        }
        CHECK(err[1] < err[0]);  // refinement moves toward the quadrature value
    }
}

TEST_CASE("cubed comparison norm grows by an order of magnitude along the spline ladder") {
    const double frozen10 = 4.89745092164142;   // 2*pi int f^3 r dr at j=10, lam=1.2
    const double frozen1e4 = 344.224595092972;  // same at j=1e4
    CHECK(radial_power_norm(family_spline(10.0, 1.2), 3.0) ==
          doctest::Approx(frozen10).epsilon(1e-9));
    CHECK(radial_power_norm(family_spline(1e4, 1.2), 3.0) ==
          doctest::Approx(frozen1e4).epsilon(1e-9));
    CHECK(frozen1e4 >= 10.0 * frozen10);
    FamilyParams p;
    p.lambda = 1.2;
    p.level = 1;
    double discrete[2];
    int k = 0;
    for (double j : {10.0, 1e4}) {
        p.j = j;
        auto mesh = make_family_mesh("ex34-spline", p);
        auto st = make_family_spacetime("ex34-spline", p, mesh);
        discrete[k++] = lp_tensor_norm(*mesh, st.sigma, MetricField::euclidean(*mesh), 3.0);
    }
    CHECK(discrete[0] == doctest::Approx(frozen10).epsilon(0.02));
    CHECK(discrete[1] == doctest::Approx(frozen1e4).epsilon(0.12));
    CHECK(discrete[1] >= 10.0 * discrete[0]);
}

TEST_CASE("family meshes carry rings at every profile breakpoint") {
    FamilyParams p;
    p.j = 100.0;
    p.lambda = 2.0;
    auto mesh = make_family_mesh("ex34-spline", p);
    const auto radii = family_spline(p.j, p.lambda).breakpoint_radii();
    REQUIRE(radii.size() == 3);
    for (double r : radii) {
        bool found = false;
        for (std::size_t v = 0; v < mesh->vertex_count() && !found; ++v)
            found = std::fabs(mesh->radial[v] - r) <= 1e-12;
        CHECK_MESSAGE(found, "no ring at radius ", r);
    }
    double rmin = 2.0;
    bool boundary_at_one = false;
    for (std::size_t v = 0; v < mesh->vertex_count(); ++v) {
        rmin = std::min(rmin, mesh->radial[v]);
        if (mesh->is_boundary[v] && std::fabs(mesh->radial[v] - 1.0) <= 1e-12)
            boundary_at_one = true;
    }
    CHECK(rmin <= 1e-12);
    CHECK(boundary_at_one);
    // a mesh without those rings is rejected
    auto bad = std::make_shared<const SpatialMesh>(make_disk_mesh(1));
    CHECK_THROWS_AS(make_family_spacetime("ex34-spline", p, bad), std::invalid_argument);
    CHECK_THROWS_AS(make_family_spacetime("ex34-spline", p, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(make_family_limit(nullptr), std::invalid_argument);
}

TEST_CASE("family spacetimes put the profile where the metric says") {
    FamilyParams p;
    p.j = 10.0;
    auto mesh = make_family_mesh("ex31-space-collapse", p);
    const auto st31 = make_family_spacetime("ex31-space-collapse", p, mesh);
    const auto st32 = make_family_spacetime("ex32-time-blowup", p, mesh);
    CHECK(st31.t0 == 0.0);
    CHECK(st31.t1 == 1.0);
    // collapse family: unit lapse, conformal spatial factor
    for (double v : st31.lapse.values) CHECK(v == 1.0);
    const RadialProfile prof31 = family_no_control_space(p.j);
    for (std::size_t v = 0; v < mesh->vertex_count(); ++v) {
        const double f = prof31.eval_at_radius(mesh->radial[v]);
        CHECK(st31.sigma.at(v)[0] == doctest::Approx(f * f).epsilon(1e-15));
        CHECK(st31.sigma.at(v)[1] == 0.0);
    }
    // blow-up family: flat space, profile in the lapse
    CHECK(st32.sigma.values == MetricField::euclidean(*mesh).values);
    const RadialProfile prof32 = family_time_blowup(p.j);
    for (std::size_t v = 0; v < mesh->vertex_count(); ++v)
        CHECK(st32.lapse.values[v] == prof32.eval_at_radius(mesh->radial[v]));
    // the two families are exact reciprocals, so the reduced slab is bitwise equal
    const auto reduced = conformal_reduce(st32);
    CHECK(reduced.sigma.values == st31.sigma.values);
    // shared flat limit
    const auto lim = make_family_limit(mesh);
    CHECK(lim.sigma.values == MetricField::euclidean(*mesh).values);
    for (double v : lim.lapse.values) CHECK(v == 1.0);
    CHECK(lim.t0 == 0.0);
    CHECK(lim.t1 == 1.0);
}
