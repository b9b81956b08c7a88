#include "recopt/balancing.hpp"

#include <algorithm>

#include "recopt/error.hpp"

namespace recopt {

BalancedProfile balance_prosumer(const EnergySeries& rho, const StorageParams& storage,
                                 std::string entity_id) {
    validate_storage(storage);
    const double eta = storage.efficiency;
    const double eta2 = eta * eta;
    const std::size_t horizon = rho.size();
    const int minutes = rho.slot_minutes();

    BalancedProfile out{std::move(entity_id), rho, EnergySeries(horizon, 0.0, minutes),
                        EnergySeries(horizon, 0.0, minutes),
                        EnergySeries(horizon + 1, 0.0, minutes)};

    // future_deficit[t] = sum of deficits strictly after t
    std::vector<double> future_deficit(horizon + 1, 0.0);
    for (std::size_t t = horizon; t-- > 0;) {
        const double next = t + 1 < horizon ? std::max(-rho[t + 1], 0.0) : 0.0;
        future_deficit[t] = future_deficit[t + 1] + next;
    }

    double soc = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
        double charge = 0.0;
        double discharge = 0.0;
        if (rho[t] > 0.0) {
            const double needed = future_deficit[t] / eta2 - soc / eta;
            charge = std::clamp(needed, 0.0, rho[t]);
        } else if (rho[t] < 0.0) {
            discharge = std::min(eta * soc, -rho[t]);
        }
        out.personal_charge[t] = charge;
        out.personal_discharge[t] = discharge;
        out.rho_prime[t] = rho[t] - charge + discharge;
        soc = soc + eta * charge - discharge / eta;
        // Rounding can leave a negligible negative residue after a full drain.
        if (soc < 0.0 && soc > -kEnergyTolerance) soc = 0.0;
        out.personal_soc[t + 1] = soc;
    }
    return out;
}

BalancedProfile balance_prosumer(const EntityProfile& entity, const StorageParams& storage) {
    if (entity.kind != EntityKind::ProsumerWithStorage)
        throw Error(ErrorCode::NotAProsumerWithStorage,
                    "entity '" + entity.id + "' is " + std::string(to_string(entity.kind)) +
                        ", balancing applies only to prosumer_with_storage",
                    entity.id);
    return balance_prosumer(net_profile(entity), storage, entity.id);
}

std::vector<BalancedEntity> balance_community(const std::vector<EntityProfile>& entities,
                                              const StorageParams& storage) {
    std::vector<BalancedEntity> out;
    out.reserve(entities.size());
    for (const auto& entity : entities) {
        if (entity.kind == EntityKind::ProsumerWithStorage) {
            out.push_back({entity.id, entity.kind, balance_prosumer(entity, storage).rho_prime});
        } else {
            out.push_back({entity.id, entity.kind, net_profile(entity)});
        }
    }
    return out;
}

std::vector<ChargeBound> post_balance_charge_bound(const std::vector<BalancedEntity>& balanced) {
    std::vector<ChargeBound> out;
    for (const auto& entity : balanced) {
        if (!has_storage(entity.kind)) continue;
        EnergySeries bound(entity.rho_prime.size(), 0.0, entity.rho_prime.slot_minutes());
        for (std::size_t t = 0; t < bound.size(); ++t) bound[t] = std::max(entity.rho_prime[t], 0.0);
        out.push_back({entity.entity_id, std::move(bound)});
    }
    return out;
}

}  // namespace recopt
