#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "nullgeo/mesh.hpp"
#include "nullgeo/metric.hpp"

namespace nullgeo {

// Piecewise positive function of a radial parameter. `BoundaryDistance`
// profiles take s = 1 - r (distance to the disk boundary), `Radius` profiles
// take r itself. When `reciprocal` is set the profile evaluates to
// 1.0 / base(x) bitwise, which keeps conformally related presentations of the
// same geometry in exact agreement.
struct RadialProfile {
    enum class Coord { Radius, BoundaryDistance };
    enum class Form { Constant, Linear, LogReciprocal, ClampedExp };

    struct Branch {
        double lo = 0.0, hi = 1.0;
        Form form = Form::Constant;
        // Constant: value a. Linear: a at lo, b at hi.
        // LogReciprocal: 1 / (x (1 - ln x)).
        // ClampedExp: max(1, a * exp(-b * (x - lo))).
        double a = 1.0, b = 0.0;
    };

    Coord coord = Coord::Radius;
    double j = 0.0;
    double lambda = 0.0;  // spline shape parameter, 0 when unused
    bool reciprocal = false;
    std::vector<Branch> branches;  // contiguous, covering [0, 1]

    double eval(double x) const;          // x in the profile's own coordinate
    double eval_at_radius(double r) const;
    std::vector<double> breakpoint_radii() const;  // interior breakpoints as radii
    // Exact per-branch integral of eval over [x0, x1] in profile coordinates
    // (closed forms per branch; used as the quadrature oracle's cross-check).
    double integrate(double x0, double x1) const;
};

// Family builders, all on the closed unit disk, slab time [0, 1].
//
// Profile with value 1/j near the boundary (s <= 1/j), rising to 1 across
// s in [1/j, 3/(2j)]. Defined as the reciprocal of the lapse profile below so
// the two presentations of this geometry agree bitwise.
RadialProfile family_no_control_space(double j);

// Lapse profile: j near the boundary (s <= 1/j), linear down to 1 across
// s in [1/j, 3/(2j)], then 1.
RadialProfile family_time_blowup(double j);

// Conformal factor j on the core r <= 1/j, decreasing bridge
// max(1, j exp(-2 j^2 (r - 1/j))) on [1/j, 3/(2j)], then 1. The bridge
// integral is below 1/j.
RadialProfile family_bubble(double j);

// Four branches: cap j^lambda / (1 + lambda ln j) on [0, j^-lambda],
// 1 / (r (1 - ln r)) up to 1/j, a clamped-exponential drop to 1 by 3/(2j),
// then 1. Requires lambda > 1.
RadialProfile family_spline(double j, double lambda);

// Recognized ids: ex31-space-collapse, ex32-time-blowup, ex33-bubble,
// ex34-spline. Throws std::invalid_argument on anything else.
extern const std::array<const char*, 4> kExampleIds;
bool is_example_id(const std::string& id);

struct FamilyParams {
    double j = 10.0;
    int level = 0;
    double lambda = 1.2;  // spline only
};

// Polar mesh whose rings hit the profile's breakpoints for this j.
std::shared_ptr<const SpatialMesh> make_family_mesh(const std::string& example,
                                                    const FamilyParams& p);

// The family member as a static slab over the given mesh (which must contain
// rings at the profile breakpoints; pass the result of make_family_mesh).
// ex32 carries its profile in the lapse, the others in the spatial metric.
StaticSpacetime make_family_spacetime(const std::string& example, const FamilyParams& p,
                                      std::shared_ptr<const SpatialMesh> mesh);

// The family's spatial limit metric on the same mesh (flat for every example).
StaticSpacetime make_family_limit(std::shared_ptr<const SpatialMesh> mesh);

// sigma = factor(r)^2 * delta evaluated per vertex.
MetricField profile_metric(const SpatialMesh& mesh, const RadialProfile& profile);
Lapse profile_lapse(const SpatialMesh& mesh, const RadialProfile& profile);

// Length of the radial segment [r0, r1] under the profile metric, from the
// per-branch closed forms.
double profile_radial_length(const RadialProfile& profile, double r0, double r1);

}  // namespace nullgeo
