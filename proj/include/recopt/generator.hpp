#pragma once

#include <cstddef>
#include <cstdint>

#include "recopt/domain.hpp"

namespace recopt {

enum class IncentiveMode {
    Convenient,    // k > alpha
    Inconvenient,  // k < alpha
    AtThreshold,   // k == alpha exactly
};

struct GeneratorOptions {
    std::size_t horizon = 96;
    std::size_t min_entities = 1;
    std::size_t max_entities = 5;
    double max_energy = 5.0;  // per-slot upper bound on load and generation (kWh)
    IncentiveMode incentive = IncentiveMode::Convenient;
};

// Random feasible scenario, deterministic in (options, seed). At least one
// entity carries storage.
ValidatedScenario generate_scenario(const GeneratorOptions& options, std::uint64_t seed);

// Day-long (96 x 15 min) community of one consumer, one prosumer with storage
// and one producer with storage: morning/evening load peaks and a midday PV
// lobe. The high-generation variant doubles the producer output.
// Reconstructed shapes, not measured data.
ValidatedScenario reconstructed_community(bool high_generation);

}  // namespace recopt
