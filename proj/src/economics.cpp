#include "recopt/economics.hpp"

#include "recopt/error.hpp"
#include "recopt/kernels.hpp"
#include "recopt/scheduler.hpp"

namespace recopt {
namespace {

void require_same_horizon(const CommunityAggregate& agg, const Schedule& schedule) {
    if (schedule.charge.size() != agg.horizon() || schedule.discharge.size() != agg.horizon())
        throw Error(ErrorCode::LengthMismatch,
                    "schedule has " + std::to_string(schedule.charge.size()) +
                        " slots, aggregate has " + std::to_string(agg.horizon()));
}

}  // namespace

double alpha(const Tariff& tariff, const StorageParams& storage) {
    validate_storage(storage);
    const double eta2 = storage.efficiency * storage.efficiency;
    return tariff.sell_price * (1.0 - eta2) / eta2;
}

bool storage_convenient(const Tariff& tariff, const StorageParams& storage) {
    return tariff.incentive > alpha(tariff, storage);
}

EnergySeries grid_injection(const CommunityAggregate& agg, const Schedule& schedule) {
    require_same_horizon(agg, schedule);
    EnergySeries out(agg.horizon(), 0.0, agg.generation.slot_minutes());
    kernels::add_sub(agg.generation.view(), schedule.charge.view(), schedule.discharge.view(),
                     out.view());
    return out;
}

EnergySeries selfconsumption_with_storage(const CommunityAggregate& agg, const Schedule& schedule) {
    EnergySeries injected = grid_injection(agg, schedule);
    EnergySeries out(agg.horizon(), 0.0, agg.load.slot_minutes());
    kernels::elementwise_min(agg.load.view(), injected.view(), out.view());
    return out;
}

double bill(const CommunityAggregate& agg, const Schedule& schedule, const Tariff& tariff) {
    const EnergySeries injected = grid_injection(agg, schedule);
    const EnergySeries self = selfconsumption_with_storage(agg, schedule);
    return tariff.purchase_price * agg.load.total() - tariff.sell_price * injected.total() -
           tariff.incentive * self.total();
}

double reduced_objective(const Schedule& schedule, const CommunityAggregate& agg,
                         const Tariff& tariff, const StorageParams& storage) {
    const EnergySeries self = selfconsumption_with_storage(agg, schedule);
    return alpha(tariff, storage) * schedule.discharge.total() - tariff.incentive * self.total();
}

double schedule_independent_cost(const CommunityAggregate& agg, const Tariff& tariff) {
    return tariff.purchase_price * agg.load.total() - tariff.sell_price * agg.generation.total();
}

double CostReport::relative_cost_reduction() const {
    if (bill_no_storage == 0.0) return 0.0;
    return (bill_no_storage - bill_optimal) / bill_no_storage;
}

double CostReport::incentive_ratio() const {
    if (incentive_no_storage == 0.0) return incentive_optimal == 0.0 ? 1.0 : 0.0;
    return incentive_optimal / incentive_no_storage;
}

CostReport compare(const CommunityAggregate& agg, const Schedule& optimal, const Tariff& tariff,
                   const StorageParams& storage) {
    require_same_horizon(agg, optimal);
    const Schedule none = Schedule::zero(agg.horizon());

    CostReport report;
    report.alpha = alpha(tariff, storage);
    report.storage_convenient = tariff.incentive > report.alpha;
    report.bill_no_storage = bill(agg, none, tariff);
    report.bill_optimal = bill(agg, optimal, tariff);
    report.incentive_no_storage = tariff.incentive * agg.baseline_selfconsumption.total();
    report.grid_injection = grid_injection(agg, optimal);
    report.selfconsumption = selfconsumption_with_storage(agg, optimal);
    report.incentive_optimal = tariff.incentive * report.selfconsumption.total();
    return report;
}

}  // namespace recopt
