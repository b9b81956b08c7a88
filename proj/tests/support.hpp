#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "recopt/aggregation.hpp"
#include "recopt/domain.hpp"
#include "recopt/scheduler.hpp"

namespace testing_support {

using recopt::CommunityAggregate;
using recopt::EnergySeries;
using recopt::Schedule;
using recopt::StorageParams;
using recopt::Tariff;

inline EnergySeries random_nonneg(std::mt19937_64& rng, std::size_t n, double hi,
                                  double zero_prob = 0.3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    EnergySeries s(n);
    for (std::size_t t = 0; t < n; ++t) s[t] = u(rng) < zero_prob ? 0.0 : hi * u(rng);
    return s;
}

// Random community aggregate with 0 <= Ebar <= R.
inline CommunityAggregate random_aggregate(std::mt19937_64& rng, std::size_t n, double hi = 5.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    EnergySeries load = random_nonneg(rng, n, hi);
    EnergySeries gen = random_nonneg(rng, n, hi);
    EnergySeries bound(n);
    for (std::size_t t = 0; t < n; ++t) bound[t] = gen[t] * (u(rng) < 0.2 ? 1.0 : u(rng));
    return recopt::make_aggregate(load, gen, bound);
}

// Bill written out from the definitions, without the library's economics code.
inline double reference_bill(const CommunityAggregate& a, const Schedule& s, const Tariff& tf) {
    double j = 0.0;
    for (std::size_t t = 0; t < a.horizon(); ++t) {
        const double g = a.generation[t] - s.charge[t] + s.discharge[t];
        const double as = std::min(a.load[t], g);
        j += tf.purchase_price * a.load[t] - tf.sell_price * g - tf.incentive * as;
    }
    return j;
}

// Feasible schedule with S(0) = S(T) = 0 drawn at random: charge a random
// fraction of headroom and discharge at random, then drain the remaining
// stored energy in the last slot.
inline Schedule random_feasible_schedule(std::mt19937_64& rng, const CommunityAggregate& a,
                                         const StorageParams& st) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eta = st.efficiency;
    const std::size_t n = a.horizon();
    EnergySeries c(n), d(n);
    double soc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (t + 1 == n) {
            d[t] = eta * soc;
        } else {
            c[t] = u(rng) < 0.5 ? a.charge_bound[t] * u(rng) : 0.0;
            d[t] = u(rng) < 0.5 ? eta * soc * u(rng) : 0.0;
        }
        soc += eta * c[t] - d[t] / eta;
    }
    return Schedule::from_controls(c, d, st);
}

}  // namespace testing_support
