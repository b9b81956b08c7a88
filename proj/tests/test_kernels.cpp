#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "recopt/kernels.hpp"
#include "recopt/oracle.hpp"
#include "support.hpp"

using namespace recopt;
namespace k = recopt::kernels;

namespace {

std::vector<double> noise(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelBackends : public ::testing::Test {
protected:
    void SetUp() override {
        if (!k::backend_available(k::Backend::Avx2)) GTEST_SKIP() << "no AVX2 on this machine";
        scalar = &k::table(k::Backend::Scalar);
        simd = &k::table(k::Backend::Avx2);
    }
    const k::KernelTable* scalar = nullptr;
    const k::KernelTable* simd = nullptr;
};

}  // namespace

TEST(Kernels, ScalarReferenceValues) {
    const auto& s = k::table(k::Backend::Scalar);
    std::vector<double> y{1, 2, 3}, x{1, 1, 2};
    s.subtract_scaled(y.data(), 2.0, x.data(), 3);
    EXPECT_EQ(y, (std::vector<double>{-1, 0, -1}));
    s.scale(y.data(), -3.0, 3);
    EXPECT_EQ(y, (std::vector<double>{3, 0, 3}));

    std::vector<double> rho{-3, 5, 0}, pos(3, 0.0), neg(3, 0.0);
    s.accumulate_parts(rho.data(), pos.data(), neg.data(), 3);
    EXPECT_EQ(pos, (std::vector<double>{0, 5, 0}));
    EXPECT_EQ(neg, (std::vector<double>{3, 0, 0}));

    std::vector<double> m(3);
    s.elementwise_min(pos.data(), neg.data(), m.data(), 3);
    EXPECT_EQ(m, (std::vector<double>{0, 0, 0}));
    s.add_sub(rho.data(), pos.data(), neg.data(), m.data(), 3);
    EXPECT_EQ(m, (std::vector<double>{0, 0, 0}));
    EXPECT_DOUBLE_EQ(s.sum(rho.data(), 3), 2.0);
    EXPECT_DOUBLE_EQ(s.sum(nullptr, 0), 0.0);
}

TEST_F(KernelBackends, ElementwiseKernelsBitIdentical) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto x = noise(rng, n), b = noise(rng, n), c = noise(rng, n);
        const double a = std::uniform_real_distribution<double>(-3, 3)(rng);

        auto y1 = noise(rng, n), y2 = y1;
        scalar->subtract_scaled(y1.data(), a, x.data(), n);
        simd->subtract_scaled(y2.data(), a, x.data(), n);
        EXPECT_TRUE(bit_equal(y1, y2)) << "subtract_scaled n=" << n;

        scalar->scale(y1.data(), a, n);
        simd->scale(y2.data(), a, n);
        EXPECT_TRUE(bit_equal(y1, y2)) << "scale n=" << n;

        std::vector<double> p1(n, 1.0), n1(n, 2.0), p2 = p1, n2 = n1;
        scalar->accumulate_parts(x.data(), p1.data(), n1.data(), n);
        simd->accumulate_parts(x.data(), p2.data(), n2.data(), n);
        EXPECT_TRUE(bit_equal(p1, p2) && bit_equal(n1, n2)) << "accumulate_parts n=" << n;

        std::vector<double> o1(n), o2(n);
        scalar->elementwise_min(x.data(), b.data(), o1.data(), n);
        simd->elementwise_min(x.data(), b.data(), o2.data(), n);
        EXPECT_TRUE(bit_equal(o1, o2)) << "elementwise_min n=" << n;

        scalar->add_sub(x.data(), b.data(), c.data(), o1.data(), n);
        simd->add_sub(x.data(), b.data(), c.data(), o2.data(), n);
        EXPECT_TRUE(bit_equal(o1, o2)) << "add_sub n=" << n;
    }
}

TEST_F(KernelBackends, SumAgreesToRoundoff) {
    std::mt19937_64 rng(12);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto x = noise(rng, n);
        double mag = 0.0;
        for (double v : x) mag += std::abs(v);
        EXPECT_NEAR(scalar->sum(x.data(), n), simd->sum(x.data(), n), 1e-14 * (mag + 1.0));
    }
}

TEST_F(KernelBackends, MinHandlesSignedZeroAndEqualLanes) {
    std::vector<double> a{0.0, -0.0, 1.0, 2.0, 3.0}, b{-0.0, 0.0, 1.0, 2.0, -3.0};
    std::vector<double> o1(5), o2(5);
    scalar->elementwise_min(a.data(), b.data(), o1.data(), 5);
    simd->elementwise_min(a.data(), b.data(), o2.data(), 5);
    EXPECT_TRUE(bit_equal(o1, o2));
}

TEST_F(KernelBackends, LpSolveIdenticalUnderBothBackends) {
    std::mt19937_64 rng(13);
    const StorageParams st{0.85};
    const Tariff tf{0.3, 0.15, 0.2};
    for (int rep = 0; rep < 5; ++rep) {
        const auto agg = testing_support::random_aggregate(rng, 24);
        const auto model = build_lp(agg, st, tf);
        k::set_backend(k::Backend::Scalar);
        const auto a = solve_lp(model);
        k::set_backend(k::Backend::Avx2);
        const auto b = solve_lp(model);
        EXPECT_EQ(a.iterations, b.iterations);
        EXPECT_TRUE(bit_equal(a.schedule.charge.values(), b.schedule.charge.values()));
        EXPECT_TRUE(bit_equal(a.schedule.discharge.values(), b.schedule.discharge.values()));
        EXPECT_NEAR(a.objective, b.objective, 1e-12);
    }
}

TEST(KernelDispatch, ScalarAlwaysAvailableAndSelectable) {
    EXPECT_TRUE(k::backend_available(k::Backend::Scalar));
    const auto before = k::active_backend();
    k::set_backend(k::Backend::Scalar);
    EXPECT_EQ(k::active_backend(), k::Backend::Scalar);
    if (k::backend_available(before)) k::set_backend(before);
    if (!k::backend_available(k::Backend::Avx2))
        EXPECT_THROW(k::set_backend(k::Backend::Avx2), std::invalid_argument);
}

TEST(KernelDispatch, SpanWrappersUseActiveBackend) {
    std::vector<double> y{4, 4, 4, 4, 4}, x{1, 2, 3, 4, 5};
    k::subtract_scaled(y, 1.0, x);
    EXPECT_EQ(y, (std::vector<double>{3, 2, 1, 0, -1}));
    EXPECT_DOUBLE_EQ(k::sum(y), 5.0);
}
