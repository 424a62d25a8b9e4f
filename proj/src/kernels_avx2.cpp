// AVX2 kernel variants. This translation unit is the only one compiled with
// -mavx2; nothing here executes before the runtime dispatch check passes.

#include "nullgeo/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace nullgeo::kernels {
namespace {

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    __m128d s = _mm_unpackhi_pd(m, m);
    return _mm_cvtsd_f64(_mm_max_sd(m, s));
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    __m128d s = _mm_unpackhi_pd(m, m);
    return _mm_cvtsd_f64(_mm_min_sd(m, s));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d t = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, t));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double reduce_max_avx2(const double* a, std::size_t n) {
    if (n == 0) return 0.0;
    std::size_t i = 0;
    __m256d acc = _mm256_set1_pd(-HUGE_VAL);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, a[i]);
    return m;
}

double reduce_min_avx2(const double* a, std::size_t n) {
    if (n == 0) return 0.0;
    std::size_t i = 0;
    __m256d acc = _mm256_set1_pd(HUGE_VAL);
    for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(a + i));
    double m = hmin(acc);
    for (; i < n; ++i) m = std::min(m, a[i]);
    return m;
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return std::max(m, 0.0);
}

double max_pos_diff_avx2(const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, d);
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, a[i] - b[i]);
    return std::max(m, 0.0);
}

double weighted_sum_avx2(const double* a, const double* w, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(w + i)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * w[i];
    return s;
}

void elementwise_max_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

bool minplus_relax_avx2(double* dst, const double* src, double add, std::size_t n) {
    std::size_t i = 0;
    const __m256d vadd = _mm256_set1_pd(add);
    __m256d any = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dst + i);
        __m256d cand = _mm256_add_pd(vadd, _mm256_loadu_pd(src + i));
        __m256d lt = _mm256_cmp_pd(cand, d, _CMP_LT_OQ);
        any = _mm256_or_pd(any, lt);
        _mm256_storeu_pd(dst + i, _mm256_blendv_pd(d, cand, lt));
    }
    bool changed = _mm256_movemask_pd(any) != 0;
    for (; i < n; ++i) {
        const double cand = add + src[i];
        if (cand < dst[i]) {
            dst[i] = cand;
            changed = true;
        }
    }
    return changed;
}

std::size_t count_abs_diff_ge_avx2(const double* a, const double* b, double thr, std::size_t n) {
    std::size_t i = 0, c = 0;
    const __m256d vthr = _mm256_set1_pd(thr);
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d ge = _mm256_cmp_pd(_mm256_and_pd(d, kAbsMask), vthr, _CMP_GE_OQ);
        c += static_cast<std::size_t>(_mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_pd(ge))));
    }
    for (; i < n; ++i) {
        if (std::fabs(a[i] - b[i]) >= thr) ++c;
    }
    return c;
}

}  // namespace

const Ops* avx2() {
    static const Ops ops{
        reduce_max_avx2,  reduce_min_avx2,    max_abs_diff_avx2,
        max_pos_diff_avx2, weighted_sum_avx2, elementwise_max_avx2,
        minplus_relax_avx2, count_abs_diff_ge_avx2, "avx2",
    };
    return &ops;
}

}  // namespace nullgeo::kernels
