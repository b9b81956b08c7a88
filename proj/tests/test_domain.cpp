#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "recopt/domain.hpp"
#include "recopt/error.hpp"
#include "support.hpp"

using namespace recopt;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no recopt::Error thrown";
    return ErrorCode::ParseError;
}

EntityProfile consumer(std::string id, EnergySeries load) {
    const std::size_t n = load.size();
    return {std::move(id), EntityKind::Consumer, std::move(load), EnergySeries(n)};
}

}  // namespace

TEST(Validate, PlainConsumerAccepted) {
    const auto s = validate_scenario({consumer("c", {1, 2})}, {0.9}, {0.35, 0.18, 0.12});
    EXPECT_EQ(s.horizon(), 2u);
    EXPECT_EQ(s.entities().size(), 1u);
}

TEST(Validate, ConsumerWithGenerationRejected) {
    EntityProfile e{"c", EntityKind::Consumer, {1, 1}, {0, 1}};
    EXPECT_EQ(code_of([&] { validate_scenario({e}, {0.9}, {0.35, 0.18, 0.12}); }),
              ErrorCode::KindConstraintViolated);
}

TEST(Validate, ProducerWithLoadRejected) {
    EntityProfile e{"p", EntityKind::ProducerWithStorage, {0, 2}, {1, 1}};
    EXPECT_EQ(code_of([&] { validate_scenario({e}, {0.9}, {0.35, 0.18, 0.12}); }),
              ErrorCode::KindConstraintViolated);
}

TEST(Validate, EfficiencyMustBeStrictlyInsideUnitInterval) {
    for (double eta : {1.0, 0.0, -0.5, 1.5, std::nan("")})
        EXPECT_EQ(code_of([&] { validate_scenario({consumer("c", {1})}, {eta}, {0.3, 0.1, 0.1}); }),
                  ErrorCode::InvalidEfficiency)
            << eta;
}

TEST(Validate, PricesChecked) {
    EXPECT_EQ(code_of([] { validate_scenario({consumer("c", {1})}, {0.9}, {-0.1, 0.1, 0.1}); }),
              ErrorCode::InvalidPrice);
    EXPECT_EQ(code_of([] { validate_scenario({consumer("c", {1})}, {0.9}, {0.3, 0.0, 0.1}); }),
              ErrorCode::InvalidPrice);
    EXPECT_EQ(code_of([] {
                  validate_scenario({consumer("c", {1})}, {0.9},
                                    {0.3, 0.1, std::numeric_limits<double>::infinity()});
              }),
              ErrorCode::InvalidPrice);
}

TEST(Validate, SeriesErrorsNameEntityAndSlot) {
    try {
        validate_scenario({consumer("a", {1, 1}), consumer("b", {1, -2})}, {0.9}, {0.3, 0.1, 0.1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeEnergy);
        EXPECT_EQ(e.entity(), "b");
        EXPECT_EQ(e.slot(), 1u);
    }
    EXPECT_EQ(code_of([] {
                  validate_scenario({consumer("a", {1, 1}), consumer("b", {1})}, {0.9},
                                    {0.3, 0.1, 0.1});
              }),
              ErrorCode::LengthMismatch);
    EXPECT_EQ(code_of([] {
                  validate_scenario({consumer("a", {1, std::nan("")})}, {0.9}, {0.3, 0.1, 0.1});
              }),
              ErrorCode::NonFiniteValue);
    EXPECT_EQ(code_of([] {
                  validate_scenario({consumer("a", {1}), consumer("a", {2})}, {0.9}, {0.3, 0.1, 0.1});
              }),
              ErrorCode::DuplicateId);
}

TEST(Validate, EmptyEntityListNeedsHorizon) {
    EXPECT_EQ(code_of([] { validate_scenario({}, {0.9}, {0.3, 0.1, 0.1}); }),
              ErrorCode::LengthMismatch);
    const auto s = validate_scenario({}, {0.9}, {0.3, 0.1, 0.1}, 4);
    EXPECT_EQ(s.horizon(), 4u);
}

TEST(Validate, RevalidationIsIdempotent) {
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng() % 20;
        std::vector<EntityProfile> es;
        es.push_back(consumer("c", testing_support::random_nonneg(rng, n, 3)));
        es.push_back({"p", EntityKind::ProsumerWithStorage, testing_support::random_nonneg(rng, n, 3),
                      testing_support::random_nonneg(rng, n, 3)});
        es.push_back({"g", EntityKind::Producer, EnergySeries(n),
                      testing_support::random_nonneg(rng, n, 3)});
        const auto s = validate_scenario(es, {0.8}, {0.3, 0.1, 0.2});
        EXPECT_EQ(revalidate(s), s);
        EXPECT_EQ(revalidate(revalidate(s)), s);
    }
}

TEST(NetProfile, Examples) {
    EXPECT_EQ(net_profile({"x", EntityKind::ProsumerPlain, {3, 0}, {0, 5}}), (EnergySeries{-3, 5}));
    EXPECT_EQ(net_profile({"p", EntityKind::Producer, {0, 0}, {4, 4}}), (EnergySeries{4, 4}));
    EXPECT_TRUE(net_profile({"z", EntityKind::ProsumerPlain, {0, 0, 0}, {0, 0, 0}}).all_zero(0.0));
}

TEST(NetProfile, BoundedByLoadAndGeneration) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng() % 30;
        EntityProfile e{"x", EntityKind::ProsumerWithStorage, testing_support::random_nonneg(rng, n, 4),
                        testing_support::random_nonneg(rng, n, 4)};
        const auto rho = net_profile(e);
        ASSERT_EQ(rho.size(), n);
        for (std::size_t t = 0; t < n; ++t) {
            EXPECT_GE(rho[t], -e.load[t]);
            EXPECT_LE(rho[t], e.generation[t]);
        }
    }
}

TEST(EnergySeriesBasics, AtAndTotal) {
    EnergySeries s{1.5, 2.5};
    EXPECT_DOUBLE_EQ(s.total(), 4.0);
    EXPECT_DOUBLE_EQ(s.at(1), 2.5);
    EXPECT_EQ(code_of([&] { (void)s.at(2); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(s.slot_minutes(), 15);
}

TEST(EntityKinds, ParseRoundTrip) {
    for (auto kind : {EntityKind::Consumer, EntityKind::Producer, EntityKind::ProsumerPlain,
                      EntityKind::ProsumerWithStorage, EntityKind::ProducerWithStorage})
        EXPECT_EQ(parse_entity_kind(to_string(kind)), kind);
    EXPECT_FALSE(parse_entity_kind("battery").has_value());
}
