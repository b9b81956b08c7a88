#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace recopt {

// Absolute tolerance (kWh) for every invariant check on energy quantities.
inline constexpr double kEnergyTolerance = 1e-9;

inline constexpr int kDefaultSlotMinutes = 15;

// Per-slot energies in kWh. The slot duration is carried as metadata and
// never enters the arithmetic.
class EnergySeries {
public:
    EnergySeries() = default;
    explicit EnergySeries(std::size_t length, double fill = 0.0,
                          int slot_minutes = kDefaultSlotMinutes);
    explicit EnergySeries(std::vector<double> values, int slot_minutes = kDefaultSlotMinutes);
    EnergySeries(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    int slot_minutes() const noexcept { return slot_minutes_; }
    void set_slot_minutes(int minutes) noexcept { slot_minutes_ = minutes; }

    double operator[](std::size_t t) const noexcept { return values_[t]; }
    double& operator[](std::size_t t) noexcept { return values_[t]; }
    // Bounds-checked; throws Error(IndexOutOfRange).
    double at(std::size_t t) const;

    std::span<const double> view() const noexcept { return values_; }
    std::span<double> view() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    double total() const;
    bool all_zero(double tolerance = kEnergyTolerance) const;

    friend bool operator==(const EnergySeries&, const EnergySeries&) = default;

private:
    std::vector<double> values_;
    int slot_minutes_ = kDefaultSlotMinutes;
};

enum class EntityKind {
    Consumer,
    Producer,
    ProsumerPlain,
    ProsumerWithStorage,
    ProducerWithStorage,
};

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);

constexpr bool has_storage(EntityKind kind) {
    return kind == EntityKind::ProsumerWithStorage || kind == EntityKind::ProducerWithStorage;
}
constexpr bool may_consume(EntityKind kind) {
    return kind == EntityKind::Consumer || kind == EntityKind::ProsumerPlain ||
           kind == EntityKind::ProsumerWithStorage;
}
constexpr bool may_generate(EntityKind kind) { return kind != EntityKind::Consumer; }

struct EntityProfile {
    std::string id;
    EntityKind kind = EntityKind::Consumer;
    EnergySeries load;
    EnergySeries generation;

    friend bool operator==(const EntityProfile&, const EntityProfile&) = default;
};

struct StorageParams {
    double efficiency = 0.9;

    friend bool operator==(const StorageParams&, const StorageParams&) = default;
};

// Prices in currency per kWh.
struct Tariff {
    double purchase_price = 0.0;
    double sell_price = 0.0;
    double incentive = 0.0;

    friend bool operator==(const Tariff&, const Tariff&) = default;
};

// A scenario that passed validate_scenario. Immutable.
class ValidatedScenario {
public:
    const std::vector<EntityProfile>& entities() const noexcept { return entities_; }
    const StorageParams& storage() const noexcept { return storage_; }
    const Tariff& tariff() const noexcept { return tariff_; }
    std::size_t horizon() const noexcept { return horizon_; }
    int slot_minutes() const noexcept { return slot_minutes_; }

    friend bool operator==(const ValidatedScenario&, const ValidatedScenario&) = default;

private:
    friend ValidatedScenario validate_scenario(std::vector<EntityProfile>, StorageParams, Tariff,
                                               std::optional<std::size_t>, int);
    ValidatedScenario() = default;

    std::vector<EntityProfile> entities_;
    StorageParams storage_;
    Tariff tariff_;
    std::size_t horizon_ = 0;
    int slot_minutes_ = kDefaultSlotMinutes;
};

void validate_storage(const StorageParams& storage);
void validate_tariff(const Tariff& tariff);
// Checks one entity against its kind and the expected horizon.
void validate_entity(const EntityProfile& entity, std::size_t horizon);

// Gate for everything downstream. The horizon is taken from the first entity
// when not given; an empty entity list needs an explicit horizon.
// Throws Error naming the first violated invariant.
ValidatedScenario validate_scenario(std::vector<EntityProfile> entities, StorageParams storage,
                                    Tariff tariff, std::optional<std::size_t> horizon = std::nullopt,
                                    int slot_minutes = kDefaultSlotMinutes);

inline ValidatedScenario revalidate(const ValidatedScenario& s) {
    return validate_scenario(s.entities(), s.storage(), s.tariff(), s.horizon(), s.slot_minutes());
}

// rho(t) = generation(t) - load(t)
EnergySeries net_profile(const EntityProfile& entity);

}  // namespace recopt
