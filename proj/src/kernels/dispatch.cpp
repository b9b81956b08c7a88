#include <atomic>
#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "recopt/kernels.hpp"

namespace recopt::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(RECOPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect() {
    if (const char* env = std::getenv("RECOPT_SIMD")) {
        if (std::string(env) == "scalar") return Backend::Scalar;
    }
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> ptr{&table(detect())};
    return ptr;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view to_string(Backend backend) {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return cpu_has_avx2();
    }
    return false;
}

const KernelTable& table(Backend backend) {
#if defined(RECOPT_HAVE_AVX2)
    if (backend == Backend::Avx2) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

Backend active_backend() {
#if defined(RECOPT_HAVE_AVX2)
    if (&active() == &detail::avx2_table) return Backend::Avx2;
#endif
    return Backend::Scalar;
}

void set_backend(Backend backend) {
    if (!backend_available(backend))
        throw std::invalid_argument("SIMD backend not available: " + std::string(to_string(backend)));
    current().store(&table(backend), std::memory_order_relaxed);
}

void subtract_scaled(std::span<double> y, double a, std::span<const double> x) {
    assert(y.size() == x.size());
    active().subtract_scaled(y.data(), a, x.data(), y.size());
}

void scale(std::span<double> y, double a) { active().scale(y.data(), a, y.size()); }

void accumulate_parts(std::span<const double> x, std::span<double> pos, std::span<double> neg) {
    assert(x.size() == pos.size() && x.size() == neg.size());
    active().accumulate_parts(x.data(), pos.data(), neg.data(), x.size());
}

void elementwise_min(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    active().elementwise_min(a.data(), b.data(), out.data(), out.size());
}

void add_sub(std::span<const double> base, std::span<const double> minus,
             std::span<const double> plus, std::span<double> out) {
    assert(base.size() == minus.size() && base.size() == plus.size() && base.size() == out.size());
    active().add_sub(base.data(), minus.data(), plus.data(), out.data(), out.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

}  // namespace recopt::kernels
