#include "recopt/kernels.hpp"

namespace recopt::kernels::detail {
namespace {

void subtract_scaled(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] -= a * x[i];
}

void scale(double* y, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void accumulate_parts(const double* x, double* pos, double* neg, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        // Same select semantics as _mm256_max_pd: second operand on ties/NaN.
        double p = x[i] > 0.0 ? x[i] : 0.0;
        double m = -x[i] > 0.0 ? -x[i] : 0.0;
        pos[i] += p;
        neg[i] += m;
    }
}

void elementwise_min(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
}

void add_sub(const double* base, const double* minus, const double* plus, double* out,
             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (base[i] - minus[i]) + plus[i];
}

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

}  // namespace

const KernelTable scalar_table{
    subtract_scaled, scale, accumulate_parts, elementwise_min, add_sub, sum,
};

}  // namespace recopt::kernels::detail
