#include <cmath>

#include "doctest.h"
#include "nullgeo/smallmat.hpp"

namespace sm = nullgeo::smallmat;

TEST_CASE("sqrt_det of simple SPD matrices") {
    const double eye[4] = {1, 0, 0, 1};
    CHECK(sm::sqrt_det_spd(2, eye) == 1.0);
    const double four[4] = {4, 0, 0, 4};
    CHECK(sm::sqrt_det_spd(2, four) == 4.0);
    const double skew[4] = {2, 1, 1, 2};  // det 3
    CHECK(sm::sqrt_det_spd(2, skew) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    const double spd3[9] = {4, 1, 0, 1, 3, 1, 0, 1, 2};  // det = 4*5 - 1*2 = 18
    CHECK(sm::sqrt_det_spd(3, spd3) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-14));
}

TEST_CASE("non positive definite input is rejected") {
    const double bad[4] = {1, 2, 2, 1};  // det -3
    CHECK_THROWS_AS(sm::sqrt_det_spd(2, bad), std::invalid_argument);
    const double neg[4] = {-1, 0, 0, 1};
    CHECK_THROWS_AS(sm::sqrt_det_spd(2, neg), std::invalid_argument);
}

TEST_CASE("quadratic form") {
    const double g[4] = {2, 1, 1, 3};
    const double v[2] = {1, -1};
    CHECK(sm::quad_form(2, g, v) == 3.0);  // 2 - 1 - 1 + 3
}

TEST_CASE("symmetric max eigenvalue") {
    const double diag[4] = {5, 0, 0, 2};
    CHECK(sm::max_eigenvalue_sym(2, diag) == doctest::Approx(5.0).epsilon(1e-14));
    const double pair[4] = {2, 1, 1, 2};  // eigenvalues 1, 3
    CHECK(sm::max_eigenvalue_sym(2, pair) == doctest::Approx(3.0).epsilon(1e-14));
    const double m3[9] = {2, 0, 0, 0, 3, 1, 0, 1, 3};  // eigenvalues 2, 2, 4
    CHECK(sm::max_eigenvalue_sym(3, m3) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("generalized max eigenvalue of (g1, g0)") {
    const double eye[4] = {1, 0, 0, 1};
    const double four[4] = {4, 0, 0, 4};
    CHECK(sm::max_gen_eigenvalue(2, four, eye) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(sm::max_gen_eigenvalue(2, eye, four) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sm::max_gen_eigenvalue(2, four, four) == doctest::Approx(1.0).epsilon(1e-14));
    // non-diagonal reference: g0 = [[2,1],[1,2]], g1 = 3*g0 -> 3 exactly
    const double g0[4] = {2, 1, 1, 2};
    const double g1[4] = {6, 3, 3, 6};
    CHECK(sm::max_gen_eigenvalue(2, g1, g0) == doctest::Approx(3.0).epsilon(1e-13));
}
