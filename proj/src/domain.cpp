#include "recopt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "recopt/error.hpp"
#include "recopt/kernels.hpp"

namespace recopt {

EnergySeries::EnergySeries(std::size_t length, double fill, int slot_minutes)
    : values_(length, fill), slot_minutes_(slot_minutes) {}

EnergySeries::EnergySeries(std::vector<double> values, int slot_minutes)
    : values_(std::move(values)), slot_minutes_(slot_minutes) {}

EnergySeries::EnergySeries(std::initializer_list<double> values) : values_(values) {}

double EnergySeries::at(std::size_t t) const {
    if (t >= values_.size())
        throw Error(ErrorCode::IndexOutOfRange, "slot " + std::to_string(t) +
                                                    " out of range for series of length " +
                                                    std::to_string(values_.size()),
                    std::nullopt, t);
    return values_[t];
}

double EnergySeries::total() const { return kernels::sum(values_); }

bool EnergySeries::all_zero(double tolerance) const {
    return std::all_of(values_.begin(), values_.end(),
                       [&](double v) { return std::abs(v) <= tolerance; });
}

std::string_view to_string(EntityKind kind) {
    switch (kind) {
        case EntityKind::Consumer: return "consumer";
        case EntityKind::Producer: return "producer";
        case EntityKind::ProsumerPlain: return "prosumer";
        case EntityKind::ProsumerWithStorage: return "prosumer_with_storage";
        case EntityKind::ProducerWithStorage: return "producer_with_storage";
    }
    return "unknown";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
    for (auto kind : {EntityKind::Consumer, EntityKind::Producer, EntityKind::ProsumerPlain,
                      EntityKind::ProsumerWithStorage, EntityKind::ProducerWithStorage}) {
        if (to_string(kind) == text) return kind;
    }
    return std::nullopt;
}

void validate_storage(const StorageParams& storage) {
    const double eta = storage.efficiency;
    if (!std::isfinite(eta) || !(eta > 0.0 && eta < 1.0))
        throw Error(ErrorCode::InvalidEfficiency,
                    "storage efficiency must lie strictly between 0 and 1, got " +
                        std::to_string(eta));
}

void validate_tariff(const Tariff& tariff) {
    auto check = [](double value, const char* name) {
        if (!std::isfinite(value) || value < 0.0)
            throw Error(ErrorCode::InvalidPrice, std::string(name) +
                                                     " must be finite and nonnegative, got " +
                                                     std::to_string(value));
    };
    check(tariff.purchase_price, "purchase_price");
    check(tariff.sell_price, "sell_price");
    check(tariff.incentive, "incentive");
    if (!(tariff.sell_price > 0.0))
        throw Error(ErrorCode::InvalidPrice, "sell_price must be strictly positive");
}

namespace {

void check_series(const EnergySeries& series, const EntityProfile& entity, std::size_t horizon,
                  const char* which, bool must_be_zero) {
    if (series.size() != horizon)
        throw Error(ErrorCode::LengthMismatch,
                    "entity '" + entity.id + "' " + which + " has " +
                        std::to_string(series.size()) + " slots, expected " +
                        std::to_string(horizon),
                    entity.id);
    for (std::size_t t = 0; t < series.size(); ++t) {
        const double v = series[t];
        if (!std::isfinite(v))
            throw Error(ErrorCode::NonFiniteValue,
                        "entity '" + entity.id + "' " + which + " is not finite at slot " +
                            std::to_string(t),
                        entity.id, t);
        if (v < -kEnergyTolerance)
            throw Error(ErrorCode::NegativeEnergy,
                        "entity '" + entity.id + "' " + which + " is negative at slot " +
                            std::to_string(t),
                        entity.id, t);
        if (must_be_zero && v > kEnergyTolerance)
            throw Error(ErrorCode::KindConstraintViolated,
                        "entity '" + entity.id + "' of kind " + std::string(to_string(entity.kind)) +
                            " must have zero " + which + ", nonzero at slot " + std::to_string(t),
                        entity.id, t);
    }
}

}  // namespace

void validate_entity(const EntityProfile& entity, std::size_t horizon) {
    check_series(entity.load, entity, horizon, "load", !may_consume(entity.kind));
    check_series(entity.generation, entity, horizon, "generation", !may_generate(entity.kind));
}

ValidatedScenario validate_scenario(std::vector<EntityProfile> entities, StorageParams storage,
                                    Tariff tariff, std::optional<std::size_t> horizon,
                                    int slot_minutes) {
    validate_storage(storage);
    validate_tariff(tariff);

    std::size_t length = 0;
    if (horizon) {
        length = *horizon;
    } else if (!entities.empty()) {
        length = entities.front().load.size();
    }
    if (length == 0)
        throw Error(ErrorCode::LengthMismatch, "scenario horizon must be at least one slot");

    std::set<std::string> seen;
    for (const auto& entity : entities) {
        if (!seen.insert(entity.id).second)
            throw Error(ErrorCode::DuplicateId, "duplicate entity id '" + entity.id + "'", entity.id);
        validate_entity(entity, length);
    }

    ValidatedScenario out;
    out.entities_ = std::move(entities);
    out.storage_ = storage;
    out.tariff_ = tariff;
    out.horizon_ = length;
    out.slot_minutes_ = slot_minutes;
    return out;
}

EnergySeries net_profile(const EntityProfile& entity) {
    EnergySeries rho(entity.generation.size(), 0.0, entity.generation.slot_minutes());
    for (std::size_t t = 0; t < rho.size(); ++t) rho[t] = entity.generation[t] - entity.load[t];
    return rho;
}

}  // namespace recopt
