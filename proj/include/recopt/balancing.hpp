#pragma once

#include <string>
#include <vector>

#include "recopt/domain.hpp"

namespace recopt {

// Result of a storage-equipped prosumer covering its own load before the
// community optimisation.
struct BalancedProfile {
    std::string entity_id;
    EnergySeries rho_prime;           // reshaped net profile
    EnergySeries personal_charge;     // energy put into the buffer per slot
    EnergySeries personal_discharge;  // energy drawn from the buffer per slot
    EnergySeries personal_soc;        // T+1 entries, starts and ends at zero
};

// Reserve-then-discharge pass with perfect foresight over the horizon.
// A surplus slot charges only what the remaining future deficits still need
// (in stored-energy terms); a deficit slot discharges as much as the buffer
// allows. The buffer ends empty and any unreserved surplus stays in rho'.
BalancedProfile balance_prosumer(const EnergySeries& rho, const StorageParams& storage,
                                 std::string entity_id = {});

// Overload that checks the entity kind. Throws NotAProsumerWithStorage.
BalancedProfile balance_prosumer(const EntityProfile& entity, const StorageParams& storage);

struct BalancedEntity {
    std::string entity_id;
    EntityKind kind = EntityKind::Consumer;
    EnergySeries rho_prime;
};

// Balances every ProsumerWithStorage; everything else passes through with
// rho' = rho. Output order follows the input order.
std::vector<BalancedEntity> balance_community(const std::vector<EntityProfile>& entities,
                                              const StorageParams& storage);

struct ChargeBound {
    std::string entity_id;
    EnergySeries bound;
};

// max{rho'(t), 0} for each storage-equipped entity; other entities are left out.
std::vector<ChargeBound> post_balance_charge_bound(const std::vector<BalancedEntity>& balanced);

}  // namespace recopt
