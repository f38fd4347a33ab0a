#pragma once

// Shared random generators for the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mro/instance.hpp"
#include "mro/lagrangian.hpp"
#include "mro/synth.hpp"

#ifndef MRO_DATA_DIR
#define MRO_DATA_DIR "."
#endif

namespace testgen {

inline std::string data_file(const std::string& name) {
    return std::string(MRO_DATA_DIR) + "/" + name;
}

inline mro::Instance random_instance(std::mt19937_64& rng, int max_m = 6, int max_k = 3) {
    std::uniform_int_distribution<int> m_dist(2, max_m);
    std::uniform_int_distribution<int> k_dist(1, max_k);
    mro::SynthRanges ranges;
    std::uniform_real_distribution<double> prob(0.0, 0.6);
    std::uniform_real_distribution<double> speed(1.5, 8.0);
    ranges.extra_edge_prob = prob(rng);
    ranges.speedup_min = speed(rng);
    ranges.speedup_max = ranges.speedup_min * 1.5;
    return mro::synthesize_instance(m_dist(rng), k_dist(rng), rng(), ranges);
}

// Arbitrary plan: random placement (pinned components stay local), a mix
// of zero / uniform / raw-random split rows, random one-hot receive rows.
inline mro::OffloadPlan random_plan(const mro::Instance& inst, std::mt19937_64& rng) {
    const int m = inst.m();
    const int K = inst.k();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> radio(0, K - 1);

    mro::OffloadPlan plan;
    plan.placement.assign(m, 0);
    for (int i = 0; i < m; ++i)
        if (!inst.pinned(i)) plan.placement[i] = unit(rng) < 0.5 ? 1 : 0;

    plan.split.assign(static_cast<std::size_t>(m) * K, 0.0);
    for (int i = 0; i < m; ++i) {
        const double mode = unit(rng);
        if (mode < 0.25) continue;  // zero row
        double row_sum = 0;
        for (int k = 0; k < K; ++k) {
            const double v = mode < 0.5 ? 1.0 : unit(rng);
            plan.split[static_cast<std::size_t>(i) * K + k] = v;
            row_sum += v;
        }
        if (mode >= 0.75 && row_sum > 0)  // normalized row
            for (int k = 0; k < K; ++k)
                plan.split[static_cast<std::size_t>(i) * K + k] /= row_sum;
        if (mode >= 0.25 && mode < 0.5)  // uniform row
            for (int k = 0; k < K; ++k)
                plan.split[static_cast<std::size_t>(i) * K + k] = 1.0 / K;
    }

    plan.receive.assign(static_cast<std::size_t>(m) * K, 0);
    for (int i = 0; i < m; ++i)
        plan.receive[static_cast<std::size_t>(i) * K + radio(rng)] = 1;
    return plan;
}

inline mro::Multipliers random_multipliers(const mro::Instance& inst, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> kappa(0.0, 1.0);
    std::uniform_real_distribution<double> zeta(0.0, 2e-6);
    std::uniform_real_distribution<double> phi(-0.2, 0.2);
    mro::Multipliers mult;
    mult.kappa = kappa(rng);
    mult.zeta.resize(inst.k());
    mult.phi.resize(inst.m());
    for (auto& z : mult.zeta) z = zeta(rng);
    for (auto& p : mult.phi) p = phi(rng);
    return mult;
}

}  // namespace testgen
