#pragma once

#include "recopt/aggregation.hpp"
#include "recopt/domain.hpp"

namespace recopt {

struct Schedule;

// Per-kWh cost of cycling energy through storage: c_s (1 - eta^2) / eta^2.
// Throws InvalidEfficiency.
double alpha(const Tariff& tariff, const StorageParams& storage);

// Storage pays off only when the incentive strictly exceeds alpha.
bool storage_convenient(const Tariff& tariff, const StorageParams& storage);

// Energy injected into the grid: R(t) - E_c(t) + E_d(t).
EnergySeries grid_injection(const CommunityAggregate& agg, const Schedule& schedule);

// min{L(t), R(t) - E_c(t) + E_d(t)}
EnergySeries selfconsumption_with_storage(const CommunityAggregate& agg, const Schedule& schedule);

// Community energy cost: sum of c_p L - c_s G - k A_s.
double bill(const CommunityAggregate& agg, const Schedule& schedule, const Tariff& tariff);

// Schedule-dependent part of the cost: sum of alpha E_d - k A_s. Differs from
// bill() by sum(c_p L - c_s R) for every schedule that starts and ends empty.
double reduced_objective(const Schedule& schedule, const CommunityAggregate& agg,
                         const Tariff& tariff, const StorageParams& storage);

// sum(c_p L - c_s R)
double schedule_independent_cost(const CommunityAggregate& agg, const Tariff& tariff);

struct CostReport {
    double bill_no_storage = 0.0;
    double bill_optimal = 0.0;
    double incentive_no_storage = 0.0;
    double incentive_optimal = 0.0;
    double alpha = 0.0;
    bool storage_convenient = false;
    EnergySeries grid_injection;
    EnergySeries selfconsumption;

    double relative_cost_reduction() const;
    double incentive_ratio() const;
};

CostReport compare(const CommunityAggregate& agg, const Schedule& optimal, const Tariff& tariff,
                   const StorageParams& storage);

}  // namespace recopt
