#include "nullgeo/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace nullgeo::kernels {
namespace {

double reduce_max_scalar(const double* a, std::size_t n) {
    double m = -HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i]);
    return n ? m : 0.0;
}

double reduce_min_scalar(const double* a, std::size_t n) {
    double m = HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) m = std::min(m, a[i]);
    return n ? m : 0.0;
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double max_pos_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i] - b[i]);
    return std::max(m, 0.0);
}

double weighted_sum_scalar(const double* a, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * w[i];
    return s;
}

void elementwise_max_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

bool minplus_relax_scalar(double* dst, const double* src, double add, std::size_t n) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double cand = add + src[i];
        if (cand < dst[i]) {
            dst[i] = cand;
            changed = true;
        }
    }
    return changed;
}

std::size_t count_abs_diff_ge_scalar(const double* a, const double* b, double thr, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(a[i] - b[i]) >= thr) ++c;
    }
    return c;
}

}  // namespace

const Ops& scalar() {
    static const Ops ops{
        reduce_max_scalar,  reduce_min_scalar,      max_abs_diff_scalar,
        max_pos_diff_scalar, weighted_sum_scalar,   elementwise_max_scalar,
        minplus_relax_scalar, count_abs_diff_ge_scalar, "scalar",
    };
    return ops;
}

}  // namespace nullgeo::kernels
