#pragma once

#include <cstddef>

// Dense array kernels backing the distance-matrix and quadrature code paths.
// Each operation has a scalar reference implementation and an AVX2 variant;
// the active set is chosen once at startup (cpuid, overridable via the
// NULLGEO_KERNEL environment variable) and never changes afterwards.
//
// Comparison-only kernels (max/min/count/elementwise max/min-plus) produce
// bit-identical results across variants. weighted_sum reassociates the
// accumulation, so variants may differ in the last ulps.

namespace nullgeo::kernels {

struct Ops {
    double (*reduce_max)(const double* a, std::size_t n);
    double (*reduce_min)(const double* a, std::size_t n);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    // max over i of max(a[i] - b[i], 0)
    double (*max_pos_diff)(const double* a, const double* b, std::size_t n);
    double (*weighted_sum)(const double* a, const double* w, std::size_t n);
    void (*elementwise_max)(const double* a, const double* b, double* out, std::size_t n);
    // dst[i] = min(dst[i], add + src[i]); returns true if any entry changed
    bool (*minplus_relax)(double* dst, const double* src, double add, std::size_t n);
    std::size_t (*count_abs_diff_ge)(const double* a, const double* b, double thr, std::size_t n);
    const char* name;
};

// Active kernel set. "auto" picks AVX2 when the CPU supports it.
const Ops& active();

// Named sets for equivalence tests. avx2() returns nullptr when unavailable.
const Ops& scalar();
const Ops* avx2();

}  // namespace nullgeo::kernels
