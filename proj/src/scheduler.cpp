#include "recopt/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recopt/economics.hpp"
#include "recopt/error.hpp"

namespace recopt {

Schedule Schedule::zero(std::size_t horizon) {
    return Schedule{EnergySeries(horizon), EnergySeries(horizon), EnergySeries(horizon + 1), {}};
}

Schedule Schedule::from_controls(EnergySeries charge, EnergySeries discharge,
                                 const StorageParams& storage) {
    if (charge.size() != discharge.size())
        throw Error(ErrorCode::LengthMismatch, "charge and discharge differ in length");
    const double eta = storage.efficiency;
    EnergySeries soc(charge.size() + 1, 0.0, charge.slot_minutes());
    for (std::size_t t = 0; t < charge.size(); ++t)
        soc[t + 1] = soc[t] + eta * charge[t] - discharge[t] / eta;
    return Schedule{std::move(charge), std::move(discharge), std::move(soc), {}};
}

Schedule optimal_schedule(const CommunityAggregate& agg, const StorageParams& storage,
                          const Tariff& tariff) {
    validate_storage(storage);
    const std::size_t horizon = agg.horizon();
    if (agg.generation.size() != horizon || agg.charge_bound.size() != horizon)
        throw Error(ErrorCode::LengthMismatch, "aggregate series must share one horizon");

    Schedule out = Schedule::zero(horizon);
    if (!storage_convenient(tariff, storage)) return out;

    const double eta = storage.efficiency;
    const double eta2 = eta * eta;

    // deficit_after[t] = sum over deficit slots tau > t of L(tau) - R(tau)
    std::vector<double> deficit_after(horizon, 0.0);
    for (std::size_t t = horizon; t-- > 1;) {
        const double gap = agg.load[t] - agg.generation[t];
        deficit_after[t - 1] = deficit_after[t] + (gap > 0.0 ? gap : 0.0);
    }

    double soc = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
        const double load = agg.load[t];
        const double gen = agg.generation[t];
        if (load > gen) {
            out.discharge[t] = std::min(load - gen, eta * soc);
        } else {
            const double remaining_need = deficit_after[t] / eta2 - soc / eta;
            if (remaining_need < -kEnergyTolerance) out.clamped_slots.push_back(t);
            const double charge = std::min({agg.charge_bound[t], gen - load, remaining_need});
            out.charge[t] = charge > 0.0 ? charge : 0.0;
        }
        soc = soc + eta * out.charge[t] - out.discharge[t] / eta;
        if (soc < 0.0 && soc > -kEnergyTolerance) soc = 0.0;
        out.soc[t + 1] = soc;
    }

    if (std::abs(out.soc[horizon]) > kTerminalTolerance)
        throw Error(ErrorCode::InternalInfeasible,
                    "closed-form schedule ends with storage level " +
                        std::to_string(out.soc[horizon]));
    return out;
}

std::string_view to_string(CertificateRule rule) {
    switch (rule) {
        case CertificateRule::Complementarity: return "complementarity";
        case CertificateRule::SignPattern: return "sign_pattern";
        case CertificateRule::MagnitudeBound: return "magnitude_bound";
        case CertificateRule::SelfconsumptionIdentity: return "selfconsumption_identity";
    }
    return "unknown";
}

OptimalityCertificate check_certificate(const Schedule& schedule, const CommunityAggregate& agg,
                                        double tolerance) {
    const std::size_t horizon = agg.horizon();
    if (schedule.charge.size() != horizon || schedule.discharge.size() != horizon)
        throw Error(ErrorCode::LengthMismatch, "schedule and aggregate differ in horizon");

    OptimalityCertificate cert;
    auto flag = [&](std::size_t t, CertificateRule rule, double magnitude) {
        cert.violations.push_back({t, rule, magnitude});
        switch (rule) {
            case CertificateRule::Complementarity: cert.complementarity_ok = false; break;
            case CertificateRule::SignPattern: cert.sign_pattern_ok = false; break;
            case CertificateRule::MagnitudeBound: cert.magnitude_bound_ok = false; break;
            case CertificateRule::SelfconsumptionIdentity:
                cert.selfconsumption_identity_ok = false;
                break;
        }
    };

    for (std::size_t t = 0; t < horizon; ++t) {
        const double c = schedule.charge[t];
        const double d = schedule.discharge[t];
        const double load = agg.load[t];
        const double gen = agg.generation[t];

        const double overlap = std::min(c, d);
        if (overlap > tolerance) flag(t, CertificateRule::Complementarity, overlap);

        if (load > gen) {
            if (c > tolerance) flag(t, CertificateRule::SignPattern, c);
            if (d - (load - gen) > tolerance)
                flag(t, CertificateRule::MagnitudeBound, d - (load - gen));
        } else {
            if (d > tolerance) flag(t, CertificateRule::SignPattern, d);
            if (c - (gen - load) > tolerance)
                flag(t, CertificateRule::MagnitudeBound, c - (gen - load));
        }

        const double with_storage = std::min(load, gen - c + d);
        const double gap = std::abs(with_storage - (agg.baseline_selfconsumption[t] + d));
        if (gap > tolerance) flag(t, CertificateRule::SelfconsumptionIdentity, gap);
    }
    return cert;
}

std::vector<FeasibilityViolation> check_feasibility(const Schedule& schedule,
                                                    const CommunityAggregate& agg,
                                                    const StorageParams& storage, double tolerance,
                                                    double terminal_tolerance) {
    const std::size_t horizon = agg.horizon();
    if (schedule.charge.size() != horizon || schedule.discharge.size() != horizon ||
        schedule.soc.size() != horizon + 1)
        throw Error(ErrorCode::LengthMismatch, "schedule and aggregate differ in horizon");

    const double eta = storage.efficiency;
    std::vector<FeasibilityViolation> out;
    auto flag = [&](std::size_t t, const char* what, double magnitude) {
        out.push_back({t, what, magnitude});
    };

    if (std::abs(schedule.soc[0]) > tolerance) flag(0, "initial_level", std::abs(schedule.soc[0]));
    if (std::abs(schedule.soc[horizon]) > terminal_tolerance)
        flag(horizon, "terminal_level", std::abs(schedule.soc[horizon]));
    for (std::size_t t = 0; t <= horizon; ++t) {
        if (schedule.soc[t] < -tolerance) flag(t, "negative_level", -schedule.soc[t]);
    }
    for (std::size_t t = 0; t < horizon; ++t) {
        const double c = schedule.charge[t];
        const double d = schedule.discharge[t];
        const double expected = schedule.soc[t] + eta * c - d / eta;
        if (std::abs(schedule.soc[t + 1] - expected) > tolerance)
            flag(t, "dynamics", std::abs(schedule.soc[t + 1] - expected));
        if (c < -tolerance) flag(t, "negative_charge", -c);
        if (c - agg.charge_bound[t] > tolerance) flag(t, "charge_bound", c - agg.charge_bound[t]);
        if (d < -tolerance) flag(t, "negative_discharge", -d);
        if (d - eta * schedule.soc[t] > tolerance)
            flag(t, "discharge_bound", d - eta * schedule.soc[t]);
    }
    return out;
}

std::vector<EntitySchedule> disaggregate(const Schedule& schedule,
                                         const std::vector<ChargeBound>& bounds,
                                         const StorageParams& storage, double tolerance) {
    const std::size_t horizon = schedule.horizon();
    const double eta = storage.efficiency;

    std::vector<double> headroom(horizon, 0.0);
    for (const auto& b : bounds) {
        if (b.bound.size() != horizon)
            throw Error(ErrorCode::LengthMismatch,
                        "charge bound of '" + b.entity_id + "' has wrong length", b.entity_id);
        for (std::size_t t = 0; t < horizon; ++t) headroom[t] += b.bound[t];
    }
    for (std::size_t t = 0; t < horizon; ++t) {
        if (headroom[t] < schedule.charge[t] - tolerance)
            throw Error(ErrorCode::BoundMismatch,
                        "storage headroom " + std::to_string(headroom[t]) +
                            " cannot carry community charge " + std::to_string(schedule.charge[t]) +
                            " at slot " + std::to_string(t),
                        std::nullopt, t);
    }

    std::vector<EntitySchedule> out;
    out.reserve(bounds.size());
    for (const auto& b : bounds) out.push_back({b.entity_id, Schedule::zero(horizon)});

    for (std::size_t t = 0; t < horizon; ++t) {
        double stored = 0.0;
        for (const auto& e : out) stored += e.schedule.soc[t];
        for (std::size_t u = 0; u < out.size(); ++u) {
            Schedule& s = out[u].schedule;
            const double c =
                headroom[t] > 0.0 ? schedule.charge[t] * (bounds[u].bound[t] / headroom[t]) : 0.0;
            const double d = stored > 0.0 ? schedule.discharge[t] * (s.soc[t] / stored) : 0.0;
            s.charge[t] = std::min(c, bounds[u].bound[t]);
            s.discharge[t] = d;
            double next = s.soc[t] + eta * s.charge[t] - s.discharge[t] / eta;
            if (next < 0.0 && next > -kEnergyTolerance) next = 0.0;
            s.soc[t + 1] = next;
        }
    }
    return out;
}

}  // namespace recopt
