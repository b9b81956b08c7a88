#include "recopt/aggregation.hpp"

#include <string>

#include "recopt/error.hpp"
#include "recopt/kernels.hpp"

namespace recopt {

double CommunityAggregate::surplus(std::size_t t) const {
    if (t >= horizon())
        throw Error(ErrorCode::IndexOutOfRange,
                    "slot " + std::to_string(t) + " out of range for horizon " +
                        std::to_string(horizon()),
                    std::nullopt, t);
    return generation[t] - load[t];
}

CommunityAggregate make_aggregate(EnergySeries load, EnergySeries generation,
                                  EnergySeries charge_bound) {
    const std::size_t horizon = load.size();
    if (generation.size() != horizon || charge_bound.size() != horizon)
        throw Error(ErrorCode::LengthMismatch, "aggregate series must share one horizon");
    for (std::size_t t = 0; t < horizon; ++t) {
        if (charge_bound[t] > generation[t] + kEnergyTolerance)
            throw Error(ErrorCode::BoundMismatch,
                        "storage headroom exceeds community generation at slot " +
                            std::to_string(t),
                        std::nullopt, t);
    }

    CommunityAggregate agg;
    agg.baseline_selfconsumption = EnergySeries(horizon, 0.0, load.slot_minutes());
    kernels::elementwise_min(load.view(), generation.view(), agg.baseline_selfconsumption.view());
    for (std::size_t t = 0; t < horizon; ++t) {
        if (load[t] > generation[t]) {
            agg.deficit_slots.push_back(t);
        } else {
            agg.surplus_slots.push_back(t);
        }
    }
    agg.load = std::move(load);
    agg.generation = std::move(generation);
    agg.charge_bound = std::move(charge_bound);
    return agg;
}

CommunityAggregate aggregate(const std::vector<BalancedEntity>& balanced,
                             const std::vector<ChargeBound>& bounds, std::size_t horizon) {
    EnergySeries load(horizon);
    EnergySeries generation(horizon);
    EnergySeries headroom(horizon);
    for (const auto& entity : balanced) {
        if (entity.rho_prime.size() != horizon)
            throw Error(ErrorCode::LengthMismatch,
                        "balanced profile of '" + entity.entity_id + "' has " +
                            std::to_string(entity.rho_prime.size()) + " slots, expected " +
                            std::to_string(horizon),
                        entity.entity_id);
        kernels::accumulate_parts(entity.rho_prime.view(), generation.view(), load.view());
    }
    for (const auto& b : bounds) {
        if (b.bound.size() != horizon)
            throw Error(ErrorCode::LengthMismatch,
                        "charge bound of '" + b.entity_id + "' has wrong length", b.entity_id);
        for (std::size_t t = 0; t < horizon; ++t) headroom[t] += b.bound[t];
    }
    if (!balanced.empty()) {
        const int minutes = balanced.front().rho_prime.slot_minutes();
        load.set_slot_minutes(minutes);
        generation.set_slot_minutes(minutes);
        headroom.set_slot_minutes(minutes);
    }
    return make_aggregate(std::move(load), std::move(generation), std::move(headroom));
}

CommunityAggregate aggregate(const std::vector<BalancedEntity>& balanced,
                             const std::vector<ChargeBound>& bounds) {
    if (balanced.empty())
        throw Error(ErrorCode::LengthMismatch, "cannot infer the horizon from an empty entity list");
    return aggregate(balanced, bounds, balanced.front().rho_prime.size());
}

}  // namespace recopt
