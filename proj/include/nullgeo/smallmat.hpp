#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

// Helpers for small dense symmetric matrices (spatial metric tensors, n <= 4
// in practice). Row-major storage, n*n doubles. All routines are deterministic.

namespace nullgeo::smallmat {

// In-place Cholesky factorization A = L L^T (lower triangle of `a` receives L).
// Returns false when the matrix is not positive definite.
inline bool cholesky(int n, double* a) {
    for (int k = 0; k < n; ++k) {
        double d = a[k * n + k];
        for (int j = 0; j < k; ++j) d -= a[k * n + j] * a[k * n + j];
        if (!(d > 0.0)) return false;
        const double lkk = std::sqrt(d);
        a[k * n + k] = lkk;
        for (int i = k + 1; i < n; ++i) {
            double s = a[i * n + k];
            for (int j = 0; j < k; ++j) s -= a[i * n + j] * a[k * n + j];
            a[i * n + k] = s / lkk;
        }
    }
    return true;
}

// sqrt(det A) for symmetric positive definite A; throws on non-SPD input.
inline double sqrt_det_spd(int n, const double* a) {
    if (n == 1) {
        if (!(a[0] > 0.0)) throw std::invalid_argument("metric tensor not positive definite");
        return std::sqrt(a[0]);
    }
    if (n == 2) {
        const double det = a[0] * a[3] - a[1] * a[2];
        if (!(a[0] > 0.0) || !(det > 0.0))
            throw std::invalid_argument("metric tensor not positive definite");
        return std::sqrt(det);
    }
    double buf[16];
    std::vector<double> heap;
    double* w = buf;
    if (n > 4) {
        heap.assign(a, a + n * n);
        w = heap.data();
    } else {
        for (int i = 0; i < n * n; ++i) buf[i] = a[i];
    }
    if (!cholesky(n, w)) throw std::invalid_argument("metric tensor not positive definite");
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= w[i * n + i];
    return p;
}

// Quadratic form v^T A v.
inline double quad_form(int n, const double* a, const double* v) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += a[i * n + j] * v[j];
        s += v[i] * row;
    }
    return s;
}

// Largest eigenvalue of a symmetric matrix via cyclic Jacobi sweeps.
inline double max_eigenvalue_sym(int n, const double* a_in) {
    if (n == 1) return a_in[0];
    if (n == 2) {
        const double tr = a_in[0] + a_in[3];
        const double d = a_in[0] - a_in[3];
        const double disc = std::sqrt(d * d + 4.0 * a_in[1] * a_in[1]);
        return 0.5 * (tr + disc);
    }
    std::vector<double> a(a_in, a_in + n * n);
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double m = a[0];
    for (int i = 1; i < n; ++i) m = std::max(m, a[i * n + i]);
    return m;
}

// Largest generalized eigenvalue of (g1, g0): max eigenvalue of g0^{-1} g1,
// computed as the max eigenvalue of L^{-1} g1 L^{-T} with g0 = L L^T.
inline double max_gen_eigenvalue(int n, const double* g1, const double* g0) {
    std::vector<double> l(g0, g0 + n * n);
    if (!cholesky(n, l.data())) throw std::invalid_argument("reference metric not positive definite");
    // B = L^{-1} g1 L^{-T}: forward-solve columns, then rows.
    std::vector<double> b(g1, g1 + n * n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            double s = b[i * n + col];
            for (int j = 0; j < i; ++j) s -= l[i * n + j] * b[j * n + col];
            b[i * n + col] = s / l[i * n + i];
        }
    }
    for (int row = 0; row < n; ++row) {
        for (int i = 0; i < n; ++i) {
            double s = b[row * n + i];
            for (int j = 0; j < i; ++j) s -= l[i * n + j] * b[row * n + j];
            b[row * n + i] = s / l[i * n + i];
        }
    }
    return max_eigenvalue_sym(n, b.data());
}

}  // namespace nullgeo::smallmat
