#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "recopt/aggregation.hpp"
#include "recopt/balancing.hpp"
#include "recopt/domain.hpp"

namespace recopt {

// Community storage trajectory. soc has horizon + 1 entries.
struct Schedule {
    EnergySeries charge;
    EnergySeries discharge;
    EnergySeries soc;
    // Surplus slots where the remaining-need bound came out negative and the
    // charge was clamped to zero. Always empty on the closed-form path unless
    // rounding pushed the bound below -kEnergyTolerance.
    std::vector<std::size_t> clamped_slots;

    std::size_t horizon() const noexcept { return charge.size(); }

    static Schedule zero(std::size_t horizon);
    // Builds soc from charge/discharge with S(0) = 0.
    static Schedule from_controls(EnergySeries charge, EnergySeries discharge,
                                  const StorageParams& storage);
};

// Absolute tolerance on the terminal state of charge.
inline constexpr double kTerminalTolerance = 1e-6;

// Closed-form optimal schedule. Returns the zero schedule when the incentive
// does not exceed alpha. Otherwise a single forward pass: deficit slots
// discharge as much as the storage and the deficit allow; surplus slots
// charge the least of headroom, community surplus, and what the remaining
// future deficits can absorb.
// Throws InvalidEfficiency, LengthMismatch, or InternalInfeasible.
Schedule optimal_schedule(const CommunityAggregate& agg, const StorageParams& storage,
                          const Tariff& tariff);

enum class CertificateRule {
    Complementarity,        // never charge and discharge in the same slot
    SignPattern,            // charge only on surplus slots, discharge only on deficit slots
    MagnitudeBound,         // charge <= surplus, discharge <= deficit
    SelfconsumptionIdentity // A_s(t) = A0(t) + E_d(t)
};

std::string_view to_string(CertificateRule rule);

struct CertificateViolation {
    std::size_t slot = 0;
    CertificateRule rule = CertificateRule::Complementarity;
    double magnitude = 0.0;
};

// Necessary optimality conditions checked slot by slot.
struct OptimalityCertificate {
    bool complementarity_ok = true;
    bool sign_pattern_ok = true;
    bool magnitude_bound_ok = true;
    bool selfconsumption_identity_ok = true;
    std::vector<CertificateViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

inline constexpr double kCertificateTolerance = 1e-9;

// Throws LengthMismatch.
OptimalityCertificate check_certificate(const Schedule& schedule, const CommunityAggregate& agg,
                                        double tolerance = kCertificateTolerance);

struct FeasibilityViolation {
    std::size_t slot = 0;
    std::string constraint;
    double magnitude = 0.0;
};

// Storage dynamics, charge/discharge bounds, nonnegative storage level and
// S(0) = S(T) = 0. Empty result means feasible.
std::vector<FeasibilityViolation> check_feasibility(const Schedule& schedule,
                                                    const CommunityAggregate& agg,
                                                    const StorageParams& storage,
                                                    double tolerance = kCertificateTolerance,
                                                    double terminal_tolerance = kTerminalTolerance);

struct EntitySchedule {
    std::string entity_id;
    Schedule schedule;
};

// Splits the community signal over the storage units: charge in proportion
// to each unit's headroom, discharge in proportion to its stored energy.
// Throws BoundMismatch when the headroom cannot carry the community charge.
std::vector<EntitySchedule> disaggregate(const Schedule& schedule,
                                         const std::vector<ChargeBound>& bounds,
                                         const StorageParams& storage,
                                         double tolerance = kCertificateTolerance);

}  // namespace recopt
