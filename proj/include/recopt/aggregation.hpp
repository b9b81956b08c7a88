#pragma once

#include <cstddef>
#include <vector>

#include "recopt/balancing.hpp"
#include "recopt/domain.hpp"

namespace recopt {

// Community-level view of the balanced profiles.
struct CommunityAggregate {
    EnergySeries load;                      // sum of negative parts of rho'
    EnergySeries generation;                // sum of positive parts of rho'
    EnergySeries charge_bound;              // sum of storage headroom
    EnergySeries baseline_selfconsumption;  // min{load, generation}
    std::vector<std::size_t> surplus_slots;  // load <= generation (ties included)
    std::vector<std::size_t> deficit_slots;  // load > generation

    std::size_t horizon() const noexcept { return load.size(); }

    // generation(t) - load(t). Throws IndexOutOfRange.
    double surplus(std::size_t t) const;

    bool is_deficit_slot(std::size_t t) const { return load.at(t) > generation.at(t); }
};

// Throws LengthMismatch when a profile or bound has the wrong length and
// BoundMismatch when the storage headroom exceeds the community generation.
CommunityAggregate aggregate(const std::vector<BalancedEntity>& balanced,
                             const std::vector<ChargeBound>& bounds, std::size_t horizon);

// Horizon taken from the first profile; throws LengthMismatch on an empty list.
CommunityAggregate aggregate(const std::vector<BalancedEntity>& balanced,
                             const std::vector<ChargeBound>& bounds);

// Builds an aggregate directly from community series (used by tests,
// the generator and anything operating without member data).
CommunityAggregate make_aggregate(EnergySeries load, EnergySeries generation,
                                  EnergySeries charge_bound);

}  // namespace recopt
