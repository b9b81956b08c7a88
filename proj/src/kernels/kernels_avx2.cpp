// Compiled with -mavx2 -ffp-contract=off; only called after a runtime CPU check.
#include <immintrin.h>

#include "recopt/kernels.hpp"

namespace recopt::kernels::detail {
namespace {

void subtract_scaled(double* y, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        __m256d p0 = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        __m256d p1 = _mm256_mul_pd(va, _mm256_loadu_pd(x + i + 4));
        _mm256_storeu_pd(y + i, _mm256_sub_pd(y0, p0));
        _mm256_storeu_pd(y + i + 4, _mm256_sub_pd(y1, p1));
    }
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), p));
    }
    for (; i < n; ++i) y[i] -= a * x[i];
}

void scale(double* y, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), va));
    for (; i < n; ++i) y[i] *= a;
}

void accumulate_parts(const double* x, double* pos, double* neg, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        __m256d p = _mm256_max_pd(v, zero);
        __m256d m = _mm256_max_pd(_mm256_xor_pd(v, sign), zero);
        _mm256_storeu_pd(pos + i, _mm256_add_pd(_mm256_loadu_pd(pos + i), p));
        _mm256_storeu_pd(neg + i, _mm256_add_pd(_mm256_loadu_pd(neg + i), m));
    }
    for (; i < n; ++i) {
        double p = x[i] > 0.0 ? x[i] : 0.0;
        double m = -x[i] > 0.0 ? -x[i] : 0.0;
        pos[i] += p;
        neg[i] += m;
    }
}

void elementwise_min(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void add_sub(const double* base, const double* minus, const double* plus, double* out,
             std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(base + i), _mm256_loadu_pd(minus + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(d, _mm256_loadu_pd(plus + i)));
    }
    for (; i < n; ++i) out[i] = (base[i] - minus[i]) + plus[i];
}

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i];
    return s;
}

}  // namespace

const KernelTable avx2_table{
    subtract_scaled, scale, accumulate_parts, elementwise_min, add_sub, sum,
};

}  // namespace recopt::kernels::detail
