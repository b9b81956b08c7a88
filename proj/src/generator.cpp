#include "recopt/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "recopt/economics.hpp"

namespace recopt {
namespace {

constexpr EntityKind kAllKinds[] = {EntityKind::Consumer, EntityKind::Producer,
                                    EntityKind::ProsumerPlain, EntityKind::ProsumerWithStorage,
                                    EntityKind::ProducerWithStorage};

// Fills a series either with sparse iid values or with a bell-shaped lobe
// plus noise, so both spiky and smooth profiles get exercised.
EnergySeries random_series(std::mt19937_64& rng, std::size_t horizon, double max_energy) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    EnergySeries s(horizon);
    if (unit(rng) < 0.5) {
        const double density = 0.3 + 0.7 * unit(rng);
        for (std::size_t t = 0; t < horizon; ++t)
            s[t] = unit(rng) < density ? max_energy * unit(rng) : 0.0;
    } else {
        const double centre = unit(rng) * static_cast<double>(horizon);
        const double width = 0.5 + unit(rng) * 0.3 * static_cast<double>(horizon);
        const double peak = max_energy * (0.2 + 0.8 * unit(rng));
        for (std::size_t t = 0; t < horizon; ++t) {
            const double z = (static_cast<double>(t) - centre) / width;
            const double v = peak * std::exp(-0.5 * z * z) * (0.8 + 0.4 * unit(rng));
            s[t] = std::min(v, max_energy);
        }
    }
    return s;
}

}  // namespace

ValidatedScenario generate_scenario(const GeneratorOptions& options, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t horizon = std::max<std::size_t>(options.horizon, 1);
    const std::size_t lo = std::max<std::size_t>(options.min_entities, 1);
    const std::size_t hi = std::max(lo, options.max_entities);
    const std::size_t count = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);

    std::vector<EntityProfile> entities;
    bool any_storage = false;
    for (std::size_t i = 0; i < count; ++i) {
        EntityKind kind = kAllKinds[std::uniform_int_distribution<int>(0, 4)(rng)];
        if (i + 1 == count && !any_storage)
            kind = unit(rng) < 0.5 ? EntityKind::ProsumerWithStorage : EntityKind::ProducerWithStorage;
        any_storage = any_storage || has_storage(kind);
        EntityProfile e{"e" + std::to_string(i), kind, EnergySeries(horizon), EnergySeries(horizon)};
        if (may_consume(kind)) e.load = random_series(rng, horizon, options.max_energy);
        if (may_generate(kind)) e.generation = random_series(rng, horizon, options.max_energy);
        entities.push_back(std::move(e));
    }

    const StorageParams storage{0.6 + 0.38 * unit(rng)};
    Tariff tariff{0.15 + 0.3 * unit(rng), 0.05 + 0.2 * unit(rng), 0.0};
    const double threshold = alpha(tariff, storage);
    switch (options.incentive) {
        case IncentiveMode::Convenient: tariff.incentive = threshold + 0.005 + 0.3 * unit(rng); break;
        case IncentiveMode::Inconvenient: tariff.incentive = threshold * unit(rng); break;
        case IncentiveMode::AtThreshold: tariff.incentive = threshold; break;
    }
    return validate_scenario(std::move(entities), storage, tariff, horizon);
}

ValidatedScenario reconstructed_community(bool high_generation) {
    constexpr std::size_t kSlots = 96;
    auto hour = [](std::size_t t) { return (static_cast<double>(t) + 0.5) * 0.25; };
    auto bump = [](double h, double centre, double width) {
        const double z = (h - centre) / width;
        return std::exp(-0.5 * z * z);
    };
    // Clear-sky style PV lobe between sunrise and sunset, zero outside.
    auto pv = [&](double h, double peak) {
        constexpr double sunrise = 6.0, sunset = 20.0;
        if (h <= sunrise || h >= sunset) return 0.0;
        const double x = (h - sunrise) / (sunset - sunrise);
        return peak * std::pow(std::sin(std::numbers::pi * x), 2.0);
    };

    EntityProfile consumer{"consumer", EntityKind::Consumer, EnergySeries(kSlots),
                           EnergySeries(kSlots)};
    EntityProfile prosumer{"prosumer", EntityKind::ProsumerWithStorage, EnergySeries(kSlots),
                           EnergySeries(kSlots)};
    EntityProfile producer{"producer", EntityKind::ProducerWithStorage, EnergySeries(kSlots),
                           EnergySeries(kSlots)};
    const double producer_peak = high_generation ? 18.0 : 9.0;
    for (std::size_t t = 0; t < kSlots; ++t) {
        const double h = hour(t);
        consumer.load[t] = 2.6 + 2.0 * bump(h, 8.0, 1.2) + 3.6 * bump(h, 20.0, 1.8);
        prosumer.load[t] = 0.8 + 0.8 * bump(h, 7.5, 1.0) + 1.6 * bump(h, 19.5, 1.5);
        prosumer.generation[t] = pv(h, 3.0);
        producer.generation[t] = pv(h, producer_peak);
    }
    return validate_scenario({consumer, prosumer, producer}, StorageParams{0.9},
                             Tariff{0.35, 0.18, 0.12}, kSlots);
}

}  // namespace recopt
