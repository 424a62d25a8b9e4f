#include "nullgeo/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nullgeo {

namespace {

double base_value(const RadialProfile::Branch& br, double x) {
    using Form = RadialProfile::Form;
    switch (br.form) {
        case Form::Constant:
            return br.a;
        case Form::Linear:
            return br.a + (br.b - br.a) * (x - br.lo) / (br.hi - br.lo);
        case Form::LogReciprocal:
            return 1.0 / (x * (1.0 - std::log(x)));
        case Form::ClampedExp:
            return std::max(1.0, br.a * std::exp(-br.b * (x - br.lo)));
    }
    throw std::logic_error("unhandled branch form");
}

// Exact integral of the base form over [u0, u1] inside the branch.
double base_integral(const RadialProfile::Branch& br, double u0, double u1) {
    using Form = RadialProfile::Form;
    switch (br.form) {
        case Form::Constant:
            return br.a * (u1 - u0);
        case Form::Linear:
            return 0.5 * (base_value(br, u0) + base_value(br, u1)) * (u1 - u0);
        case Form::LogReciprocal:
            // antiderivative of 1 / (x (1 - ln x)) is -ln(1 - ln x)
            return std::log(1.0 - std::log(u0)) - std::log(1.0 - std::log(u1));
        case Form::ClampedExp: {
            if (br.a <= 1.0 || br.b <= 0.0) return u1 - u0;
            const double cross = br.lo + std::log(br.a) / br.b;  // where the clamp takes over
            const double e0 = std::min(u1, std::max(u0, cross));
            double total = (u1 - e0);  // clamped tail at value 1
            if (e0 > u0)
                total += (br.a / br.b) *
                         (std::exp(-br.b * (u0 - br.lo)) - std::exp(-br.b * (e0 - br.lo)));
            return total;
        }
    }
    throw std::logic_error("unhandled branch form");
}

// Integral of 1 / base over [u0, u1]; needed when the profile is reciprocal.
double reciprocal_integral(const RadialProfile::Branch& br, double u0, double u1) {
    using Form = RadialProfile::Form;
    switch (br.form) {
        case Form::Constant:
            return (u1 - u0) / br.a;
        case Form::Linear: {
            const double m = (br.b - br.a) / (br.hi - br.lo);
            if (m == 0.0) return (u1 - u0) / br.a;
            return std::log(base_value(br, u1) / base_value(br, u0)) / m;
        }
        case Form::LogReciprocal: {
            // antiderivative of x (1 - ln x) is (x^2 / 4) (3 - 2 ln x)
            const auto anti = [](double x) { return 0.25 * x * x * (3.0 - 2.0 * std::log(x)); };
            return anti(u1) - anti(u0);
        }
        case Form::ClampedExp: {
            if (br.a <= 1.0 || br.b <= 0.0) return u1 - u0;
            const double cross = br.lo + std::log(br.a) / br.b;
            const double e0 = std::min(u1, std::max(u0, cross));
            double total = (u1 - e0);
            if (e0 > u0)
                total += (std::exp(br.b * (e0 - br.lo)) - std::exp(br.b * (u0 - br.lo))) /
                         (br.a * br.b);
            return total;
        }
    }
    throw std::logic_error("unhandled branch form");
}

}  // namespace

double RadialProfile::eval(double x) const {
    if (branches.empty()) throw std::invalid_argument("profile has no branches");
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw std::invalid_argument("profile evaluated outside [0, 1]");
    x = std::min(std::max(x, branches.front().lo), branches.back().hi);
    for (const Branch& br : branches)
        if (x <= br.hi || &br == &branches.back()) {
            const double v = base_value(br, x);
            return reciprocal ? 1.0 / v : v;
        }
    throw std::logic_error("branches do not cover the profile domain");
}

double RadialProfile::eval_at_radius(double r) const {
    return eval(coord == Coord::Radius ? r : 1.0 - r);
}

std::vector<double> RadialProfile::breakpoint_radii() const {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < branches.size(); ++k) {
        const double x = branches[k].hi;
        const double r = coord == Coord::Radius ? x : 1.0 - x;
        if (r > 1e-12 && r < 1.0 - 1e-12) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double RadialProfile::integrate(double x0, double x1) const {
    if (branches.empty()) throw std::invalid_argument("profile has no branches");
    if (x0 > x1) throw std::invalid_argument("integration bounds are reversed");
    double total = 0.0;
    for (const Branch& br : branches) {
        const double u0 = std::max(x0, br.lo);
        const double u1 = std::min(x1, br.hi);
        if (u1 <= u0) continue;
        total += reciprocal ? reciprocal_integral(br, u0, u1) : base_integral(br, u0, u1);
    }
    return total;
}

namespace {

// Shared branch list: j near the boundary, linear bridge down to 1. The
// spatial family is the exact reciprocal so the reduced slabs agree bitwise.
std::vector<RadialProfile::Branch> boundary_bridge_branches(double j) {
    using Form = RadialProfile::Form;
    const double s1 = 1.0 / j;
    const double s2 = 1.5 / j;
    return {{0.0, s1, Form::Constant, j, 0.0},
            {s1, s2, Form::Linear, j, 1.0},
            {s2, 1.0, Form::Constant, 1.0, 0.0}};
}

void require_j(double j) {
    if (!(j >= 2.0)) throw std::invalid_argument("sequence index j must be at least 2");
}

double log_reciprocal_at(double x) { return 1.0 / (x * (1.0 - std::log(x))); }

}  // namespace

RadialProfile family_no_control_space(double j) {
    require_j(j);
    RadialProfile p;
    p.coord = RadialProfile::Coord::BoundaryDistance;
    p.j = j;
    p.reciprocal = true;
    p.branches = boundary_bridge_branches(j);
    return p;
}

RadialProfile family_time_blowup(double j) {
    require_j(j);
    RadialProfile p;
    p.coord = RadialProfile::Coord::BoundaryDistance;
    p.j = j;
    p.branches = boundary_bridge_branches(j);
    return p;
}

RadialProfile family_bubble(double j) {
    require_j(j);
    using Form = RadialProfile::Form;
    const double r1 = 1.0 / j;
    const double r2 = 1.5 / j;
    RadialProfile p;
    p.coord = RadialProfile::Coord::Radius;
    p.j = j;
    p.branches = {{0.0, r1, Form::Constant, j, 0.0},
                  {r1, r2, Form::ClampedExp, j, 2.0 * j * j},
                  {r2, 1.0, Form::Constant, 1.0, 0.0}};
    return p;
}

RadialProfile family_spline(double j, double lambda) {
    require_j(j);
    if (!(lambda > 1.0))
        throw std::invalid_argument("profile exponent lambda must exceed 1 for the spline family");
    using Form = RadialProfile::Form;
    const double r_cap = std::pow(j, -lambda);
    const double r1 = 1.0 / j;
    const double r2 = 1.5 / j;
    RadialProfile p;
    p.coord = RadialProfile::Coord::Radius;
    p.j = j;
    p.lambda = lambda;
    // cap and bridge start values reuse the middle branch's formula so the
    // continuity residual at both breakpoints is zero
    p.branches = {{0.0, r_cap, Form::Constant, log_reciprocal_at(r_cap), 0.0},
                  {r_cap, r1, Form::LogReciprocal, 1.0, 0.0},
                  {r1, r2, Form::ClampedExp, log_reciprocal_at(r1), 2.0 * j * j},
                  {r2, 1.0, Form::Constant, 1.0, 0.0}};
    return p;
}

const std::array<const char*, 4> kExampleIds = {"ex31-space-collapse", "ex32-time-blowup",
                                                "ex33-bubble", "ex34-spline"};

bool is_example_id(const std::string& id) {
    return std::find(kExampleIds.begin(), kExampleIds.end(), id) != kExampleIds.end();
}

namespace {

RadialProfile family_profile(const std::string& example, const FamilyParams& p) {
    if (example == "ex31-space-collapse") return family_no_control_space(p.j);
    if (example == "ex32-time-blowup") return family_time_blowup(p.j);
    if (example == "ex33-bubble") return family_bubble(p.j);
    if (example == "ex34-spline") return family_spline(p.j, p.lambda);
    throw std::invalid_argument("unknown example id: " + example);
}

void require_breakpoint_rings(const SpatialMesh& mesh, const std::vector<double>& radii) {
    for (double r : radii) {
        bool hit = false;
        for (std::size_t v = 0; v < mesh.vertex_count() && !hit; ++v)
            hit = std::fabs(mesh.radial[v] - r) <= 1e-12;
        if (!hit)
            throw std::invalid_argument("mesh is missing a ring at radius " + std::to_string(r));
    }
}

}  // namespace

std::shared_ptr<const SpatialMesh> make_family_mesh(const std::string& example,
                                                    const FamilyParams& p) {
    const RadialProfile profile = family_profile(example, p);
    return std::make_shared<const SpatialMesh>(
        make_polar_disk_mesh(p.level, profile.breakpoint_radii()));
}

StaticSpacetime make_family_spacetime(const std::string& example, const FamilyParams& p,
                                      std::shared_ptr<const SpatialMesh> mesh) {
    if (!mesh) throw std::invalid_argument("family spacetime needs a mesh");
    const RadialProfile profile = family_profile(example, p);
    require_breakpoint_rings(*mesh, profile.breakpoint_radii());
    StaticSpacetime st;
    st.t0 = 0.0;
    st.t1 = 1.0;
    st.mesh = mesh;
    if (example == "ex32-time-blowup") {
        st.sigma = MetricField::euclidean(*mesh);
        st.lapse = profile_lapse(*mesh, profile);
    } else {
        st.sigma = profile_metric(*mesh, profile);
        st.lapse = Lapse::one(*mesh);
    }
    return st;
}

StaticSpacetime make_family_limit(std::shared_ptr<const SpatialMesh> mesh) {
    if (!mesh) throw std::invalid_argument("family limit needs a mesh");
    StaticSpacetime st;
    st.t0 = 0.0;
    st.t1 = 1.0;
    st.mesh = mesh;
    st.sigma = MetricField::euclidean(*mesh);
    st.lapse = Lapse::one(*mesh);
    return st;
}

MetricField profile_metric(const SpatialMesh& mesh, const RadialProfile& profile) {
    std::vector<double> factor(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
        factor[v] = profile.eval_at_radius(mesh.radial[v]);
    return MetricField::conformal_euclidean(mesh, factor);
}

Lapse profile_lapse(const SpatialMesh& mesh, const RadialProfile& profile) {
    Lapse lapse;
    lapse.values.resize(mesh.vertex_count());
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
        lapse.values[v] = profile.eval_at_radius(mesh.radial[v]);
    return lapse;
}

double profile_radial_length(const RadialProfile& profile, double r0, double r1) {
    if (!(0.0 <= r0 && r0 <= r1 && r1 <= 1.0))
        throw std::invalid_argument("radial segment must satisfy 0 <= r0 <= r1 <= 1");
    if (profile.coord == RadialProfile::Coord::Radius) return profile.integrate(r0, r1);
    return profile.integrate(1.0 - r1, 1.0 - r0);
}

}  // namespace nullgeo
