#pragma once

// Independent checks for the closed-form scheduler: the full linear program
// solved by the in-house simplex, and exhaustive search on tiny horizons.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "recopt/aggregation.hpp"
#include "recopt/domain.hpp"
#include "recopt/scheduler.hpp"
#include "recopt/simplex.hpp"

namespace recopt {

// Variables, for t in [0, T): charge(t), discharge(t), selfconsumption(t);
// and level(t) for t in [0, T]. 4T + 1 columns in that order.
//
// Rows: T storage-dynamics equalities, the two endpoint equalities
// S(0) = 0 and S(T) = 0, then 4T inequalities: charge headroom, discharge
// limited by stored energy, and the two linear upper bounds on
// self-consumption (by load and by injected energy).
struct LpModel {
    std::size_t horizon = 0;
    lp::Problem problem;
    double objective_constant = 0.0;  // sum(c_p L - c_s R)
    std::vector<std::string> row_names;

    std::size_t charge(std::size_t t) const noexcept { return t; }
    std::size_t discharge(std::size_t t) const noexcept { return horizon + t; }
    std::size_t selfconsumption(std::size_t t) const noexcept { return 2 * horizon + t; }
    std::size_t level(std::size_t t) const noexcept { return 3 * horizon + t; }
    std::size_t num_vars() const noexcept { return 4 * horizon + 1; }
    std::size_t num_equalities() const noexcept { return horizon + 2; }
    std::size_t num_inequalities() const noexcept { return 4 * horizon; }

    std::string variable_name(std::size_t j) const;
};

LpModel build_lp(const CommunityAggregate& agg, const StorageParams& storage, const Tariff& tariff);

struct LpResult {
    double objective = 0.0;  // includes objective_constant, comparable with bill()
    Schedule schedule;
    EnergySeries selfconsumption;
    std::size_t iterations = 0;
    double max_residual = 0.0;
};

LpResult solve_lp(const LpModel& model, const lp::Options& options = {});

struct BruteForceResult {
    double objective = 0.0;
    Schedule schedule;
    std::size_t evaluated = 0;  // complete schedules visited
};

inline constexpr std::size_t kBruteForceMaxHorizon = 5;
inline constexpr double kBruteForceMaxCombinations = 1e7;

// Enumerates charge on surplus slots and discharge on deficit slots over a
// grid of step grid_step (upper bounds included), keeps schedules whose final
// storage level is within grid_step of zero, and returns the cheapest by
// bill. Throws TooLarge beyond kBruteForceMaxHorizon slots or
// kBruteForceMaxCombinations grid points.
BruteForceResult brute_force(const CommunityAggregate& agg, const StorageParams& storage,
                             const Tariff& tariff, double grid_step);

// Plain-text dump of the model (format documented in docs/lp_format.md).
void write_lp(std::ostream& out, const LpModel& model);

// Reads a dump produced by write_lp back into a problem. Throws ParseError.
struct LpDump {
    lp::Problem problem;
    double objective_constant = 0.0;
    std::vector<std::string> variable_names;
    std::vector<std::string> row_names;
};
LpDump read_lp(std::istream& in);

}  // namespace recopt
