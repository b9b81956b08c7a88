#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "recopt/aggregation.hpp"
#include "recopt/error.hpp"
#include "support.hpp"

using namespace recopt;

namespace {

BalancedEntity plain(std::string id, EnergySeries rho) {
    return {std::move(id), EntityKind::ProsumerPlain, std::move(rho)};
}

}  // namespace

TEST(Aggregate, TwoEntityExample) {
    const auto a = aggregate({plain("a", {-3, 5}), plain("b", {1, -2})}, {}, 2);
    EXPECT_EQ(a.load, (EnergySeries{3, 2}));
    EXPECT_EQ(a.generation, (EnergySeries{1, 5}));
    EXPECT_EQ(a.baseline_selfconsumption, (EnergySeries{1, 2}));
    EXPECT_EQ(a.deficit_slots, (std::vector<std::size_t>{0}));
    EXPECT_EQ(a.surplus_slots, (std::vector<std::size_t>{1}));
    EXPECT_DOUBLE_EQ(a.surplus(1), 3.0);
    EXPECT_DOUBLE_EQ(a.surplus(0), -2.0);
    EXPECT_TRUE(a.charge_bound.all_zero(0.0));
}

TEST(Aggregate, SingleConsumer) {
    const auto a = aggregate({{"c", EntityKind::Consumer, {-4}}}, {});
    EXPECT_EQ(a.load, (EnergySeries{4}));
    EXPECT_EQ(a.generation, (EnergySeries{0}));
    EXPECT_EQ(a.baseline_selfconsumption, (EnergySeries{0}));
    EXPECT_EQ(a.deficit_slots.size(), 1u);
}

TEST(Aggregate, TiesCountAsSurplus) {
    const auto a = make_aggregate({2, 1}, {2, 0}, {0, 0});
    EXPECT_EQ(a.surplus_slots, (std::vector<std::size_t>{0}));
    EXPECT_FALSE(a.is_deficit_slot(0));
    EXPECT_DOUBLE_EQ(a.surplus(0), 0.0);
}

TEST(Aggregate, Errors) {
    const auto a = make_aggregate({3, 2}, {1, 5}, {0, 0});
    EXPECT_THROW((void)a.surplus(2), Error);
    EXPECT_THROW(aggregate({plain("a", {1, 2}), plain("b", {1})}, {}, 2), Error);
    EXPECT_THROW(aggregate(std::vector<BalancedEntity>{}, {}), Error);
    try {
        make_aggregate({0}, {1}, {2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BoundMismatch);
    }
}

TEST(Aggregate, EmptyCommunityWithHorizonIsZero) {
    const auto a = aggregate({}, {}, 3);
    EXPECT_EQ(a.horizon(), 3u);
    EXPECT_TRUE(a.load.all_zero(0.0));
    EXPECT_TRUE(a.generation.all_zero(0.0));
    EXPECT_EQ(a.surplus_slots.size(), 3u);
}

TEST(Aggregate, ChargeBoundSummed) {
    std::vector<BalancedEntity> b{{"s1", EntityKind::ProsumerWithStorage, {2, -1}},
                                  {"s2", EntityKind::ProducerWithStorage, {3, 1}}};
    const auto a = aggregate(b, post_balance_charge_bound(b), 2);
    EXPECT_EQ(a.charge_bound, (EnergySeries{5, 1}));
    EXPECT_EQ(a.generation, (EnergySeries{5, 1}));
}

TEST(Aggregate, PropertiesOnRandomCommunities) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rng() % 40, m = 1 + rng() % 6;
        std::vector<BalancedEntity> b;
        for (std::size_t i = 0; i < m; ++i) {
            EnergySeries rho(n);
            for (std::size_t t = 0; t < n; ++t) rho[t] = u(rng);
            b.push_back({"e" + std::to_string(i),
                         i % 2 ? EntityKind::ProsumerWithStorage : EntityKind::ProsumerPlain, rho});
        }
        const auto a = aggregate(b, post_balance_charge_bound(b), n);
        auto shuffled = b;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto c = aggregate(shuffled, post_balance_charge_bound(shuffled), n);
        EXPECT_EQ(a.surplus_slots, c.surplus_slots);
        EXPECT_EQ(a.surplus_slots.size() + a.deficit_slots.size(), n);
        for (std::size_t t = 0; t < n; ++t) {
            EXPECT_NEAR(a.load[t], c.load[t], 1e-12);
            EXPECT_NEAR(a.generation[t], c.generation[t], 1e-12);
            EXPECT_GE(a.load[t], 0.0);
            EXPECT_GE(a.generation[t], 0.0);
            EXPECT_LE(a.charge_bound[t], a.generation[t] + 1e-12);
            EXPECT_DOUBLE_EQ(a.baseline_selfconsumption[t], std::min(a.load[t], a.generation[t]));
            double net = 0.0;
            for (const auto& e : b) net += e.rho_prime[t];
            EXPECT_NEAR(a.surplus(t), net, 1e-12);
        }
    }
}
