#include <gtest/gtest.h>

#include <random>

#include "recopt/economics.hpp"
#include "recopt/error.hpp"
#include "recopt/scheduler.hpp"
#include "support.hpp"

using namespace recopt;

namespace {

const StorageParams kEta{0.9};
const Tariff kTariff{0.35, 0.18, 0.12};

CommunityAggregate two_slot() { return make_aggregate({0, 10}, {10, 0}, {10, 0}); }

}  // namespace

TEST(Alpha, ReferenceTariff) {
    EXPECT_NEAR(alpha(kTariff, kEta), 0.042, 5e-4);
    EXPECT_DOUBLE_EQ(alpha(kTariff, kEta), 0.18 * (1 - 0.81) / 0.81);
    EXPECT_DOUBLE_EQ(alpha({0.35, 0.0, 0.12}, kEta), 0.0);
    EXPECT_LT(alpha(kTariff, {0.95}), alpha(kTariff, kEta));
    EXPECT_THROW(alpha(kTariff, {1.0}), Error);
}

TEST(Alpha, ConvenienceIsStrict) {
    Tariff t = kTariff;
    t.incentive = alpha(t, kEta);
    EXPECT_FALSE(storage_convenient(t, kEta));
    t.incentive = std::nextafter(t.incentive, 1.0);
    EXPECT_TRUE(storage_convenient(t, kEta));
}

TEST(GridInjection, Examples) {
    const auto agg = two_slot();
    const auto s = Schedule::from_controls({10, 0}, {0, 8.1}, kEta);
    const auto g = grid_injection(agg, s);
    EXPECT_NEAR(g[0], 0.0, 1e-12);
    EXPECT_NEAR(g[1], 8.1, 1e-12);
    EXPECT_EQ(grid_injection(agg, Schedule::zero(2)), agg.generation);
    const auto as = selfconsumption_with_storage(agg, s);
    EXPECT_NEAR(as[0], 0.0, 1e-12);
    EXPECT_NEAR(as[1], 8.1, 1e-12);
    EXPECT_EQ(selfconsumption_with_storage(agg, Schedule::zero(2)), agg.baseline_selfconsumption);
}

TEST(Bill, TwoSlotValues) {
    const auto agg = two_slot();
    const auto opt = optimal_schedule(agg, kEta, kTariff);
    EXPECT_NEAR(bill(agg, opt, kTariff), 1.07, 1e-12);
    EXPECT_NEAR(bill(agg, Schedule::zero(2), kTariff), 1.70, 1e-12);
    EXPECT_NEAR(reduced_objective(opt, agg, kTariff, kEta), 8.1 * (0.18 * 0.19 / 0.81 - 0.12), 1e-12);
    EXPECT_NEAR(reduced_objective(opt, agg, kTariff, kEta), -0.63, 5e-3);
}

TEST(Bill, ZeroScenario) {
    const auto agg = make_aggregate({0, 0, 0}, {0, 0, 0}, {0, 0, 0});
    EXPECT_DOUBLE_EQ(bill(agg, Schedule::zero(3), kTariff), 0.0);
}

TEST(ReducedObjective, SpecialCases) {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const auto agg = testing_support::random_aggregate(rng, 1 + rng() % 30);
        const auto zero = Schedule::zero(agg.horizon());
        EXPECT_NEAR(reduced_objective(zero, agg, kTariff, kEta),
                    -kTariff.incentive * agg.baseline_selfconsumption.total(), 1e-9);
        // charge but never discharge: the objective only counts self-consumption
        Schedule only_charge = Schedule::from_controls(agg.charge_bound, EnergySeries(agg.horizon()), kEta);
        EXPECT_NEAR(reduced_objective(only_charge, agg, kTariff, kEta),
                    -kTariff.incentive * selfconsumption_with_storage(agg, only_charge).total(), 1e-9);
    }
}

TEST(Bill, MatchesReferenceFormula) {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 200; ++rep) {
        const auto agg = testing_support::random_aggregate(rng, 1 + rng() % 96);
        const auto s = testing_support::random_feasible_schedule(rng, agg, kEta);
        EXPECT_NEAR(bill(agg, s, kTariff), testing_support::reference_bill(agg, s, kTariff), 1e-9);
    }
}

TEST(Bill, ObjectiveIdentityOnFeasibleSchedules) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 1 + rng() % 96;
        const auto agg = testing_support::random_aggregate(rng, n);
        const StorageParams st{0.6 + 0.38 * u(rng)};
        const Tariff tf{0.1 + 0.4 * u(rng), 0.05 + 0.2 * u(rng), 0.3 * u(rng)};
        const auto s = testing_support::random_feasible_schedule(rng, agg, st);
        ASSERT_NEAR(s.soc[n], 0.0, 1e-9);
        double constant = 0.0;
        for (std::size_t t = 0; t < n; ++t)
            constant += tf.purchase_price * agg.load[t] - tf.sell_price * agg.generation[t];
        EXPECT_NEAR(bill(agg, s, tf) - reduced_objective(s, agg, tf, st), constant,
                    1e-9 * static_cast<double>(n));
        EXPECT_NEAR(schedule_independent_cost(agg, tf), constant, 1e-9 * static_cast<double>(n));
    }
}

TEST(Selfconsumption, StorageAddsAtMostDischarge) {
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 200; ++rep) {
        const auto agg = testing_support::random_aggregate(rng, 1 + rng() % 50);
        const auto s = testing_support::random_feasible_schedule(rng, agg, kEta);
        const auto as = selfconsumption_with_storage(agg, s);
        for (std::size_t t = 0; t < agg.horizon(); ++t)
            EXPECT_LE(as[t], agg.baseline_selfconsumption[t] + s.discharge[t] + 1e-12);
    }
}

TEST(Compare, ReportFields) {
    const auto agg = two_slot();
    const auto opt = optimal_schedule(agg, kEta, kTariff);
    const auto r = compare(agg, opt, kTariff, kEta);
    EXPECT_NEAR(r.bill_no_storage, 1.70, 1e-12);
    EXPECT_NEAR(r.bill_optimal, 1.07, 1e-12);
    EXPECT_NEAR(r.incentive_no_storage, 0.0, 1e-12);
    EXPECT_NEAR(r.incentive_optimal, 0.12 * 8.1, 1e-12);
    EXPECT_TRUE(r.storage_convenient);
    EXPECT_NEAR(r.relative_cost_reduction(), (1.70 - 1.07) / 1.70, 1e-12);

    const Tariff low{0.35, 0.18, 0.03};
    const auto z = compare(agg, optimal_schedule(agg, kEta, low), low, kEta);
    EXPECT_EQ(z.bill_optimal, z.bill_no_storage);
    EXPECT_FALSE(z.storage_convenient);
}
