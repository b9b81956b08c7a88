#pragma once

// Data-parallel inner loops used by the aggregation, economics and simplex
// code. Every kernel has a scalar reference implementation and, on x86-64,
// an AVX2 variant. The active backend is chosen once at first use from the
// CPU feature bits; RECOPT_SIMD=scalar in the environment forces the scalar
// path.
//
// Elementwise kernels are bit-identical across backends (no FMA contraction,
// same operation order per element). Reductions (sum) may differ in the last
// few ulps because lanes are accumulated separately.

#include <cstddef>
#include <span>
#include <string_view>

namespace recopt::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

// Backends compiled into this binary and supported by the running CPU.
bool backend_available(Backend backend);

Backend active_backend();

// Overrides the dispatch choice. Throws std::invalid_argument when the
// backend is not available.
void set_backend(Backend backend);

// y[i] -= a * x[i]
void subtract_scaled(std::span<double> y, double a, std::span<const double> x);

// y[i] *= a
void scale(std::span<double> y, double a);

// pos[i] += max(x[i], 0); neg[i] += max(-x[i], 0)
void accumulate_parts(std::span<const double> x, std::span<double> pos, std::span<double> neg);

// out[i] = min(a[i], b[i])
void elementwise_min(std::span<const double> a, std::span<const double> b, std::span<double> out);

// out[i] = base[i] - minus[i] + plus[i]
void add_sub(std::span<const double> base, std::span<const double> minus,
             std::span<const double> plus, std::span<double> out);

double sum(std::span<const double> x);

// Per-backend tables, exposed for equivalence tests.
struct KernelTable {
    void (*subtract_scaled)(double* y, double a, const double* x, std::size_t n);
    void (*scale)(double* y, double a, std::size_t n);
    void (*accumulate_parts)(const double* x, double* pos, double* neg, std::size_t n);
    void (*elementwise_min)(const double* a, const double* b, double* out, std::size_t n);
    void (*add_sub)(const double* base, const double* minus, const double* plus, double* out,
                    std::size_t n);
    double (*sum)(const double* x, std::size_t n);
};

const KernelTable& table(Backend backend);

namespace detail {
extern const KernelTable scalar_table;
#if defined(RECOPT_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace recopt::kernels
