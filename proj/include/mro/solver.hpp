#pragma once

#include <functional>
#include <vector>

#include "mro/energy.hpp"
#include "mro/instance.hpp"
#include "mro/lagrangian.hpp"
#include "mro/options.hpp"

namespace mro {

struct InitialMultipliers {
    double kappa = 0.1;
    double zeta = 1e-6;
    double phi = 0.1;
};

struct IterativeConfig {
    StepSizes steps{};
    InitialMultipliers init{};
    int max_outer = 500;
    int max_inner = 200;
    // Also stop once this many consecutive outer steps bring no better
    // feasible plan (0 disables). The multiplier walk can wander long
    // after the primal side has settled.
    int stall_limit = 12;
    DownlinkPolicy downlink{};
    EvalOptions opts{};
    // Invoked with every primal iterate; diagnostics only.
    std::function<void(const OffloadPlan&)> iterate_observer;
};

struct SolveReport {
    OffloadPlan plan;
    PlanCosts costs;
    int outer_iters = 0;
    long inner_iters_total = 0;
    bool converged = false;
    bool feasible = false;
    std::vector<Multipliers> multiplier_history;
};

struct InnerResult {
    OffloadPlan plan;
    int iterations = 0;
};

// Placement/split refinement at fixed multipliers: recompute the flip
// coefficients, apply the sign rule, re-derive the splits, toggle the
// most favorable component on a coefficient sign change, and stop once
// the relaxed objective stops decreasing. Returns the iterate with the
// lowest relaxed objective seen, which is never worse than the input.
InnerResult inner_modification_loop(const Instance& inst, const OffloadPlan& start,
                                    const Multipliers& mult, const IterativeConfig& cfg,
                                    const std::vector<double>& entering_delta = {},
                                    const std::function<void(const OffloadPlan&)>& visit = {});

// Full solve: closed-form initialization, alternating inner refinement
// and projected subgradient updates of the multipliers until they settle
// and the iterate is feasible, or the caps run out. Reports the cheapest
// feasible iterate seen; when none exists, the least-violating iterate
// with feasible = false. Never throws on infeasible instances.
SolveReport solve(const Instance& inst, const IterativeConfig& cfg = {});

}  // namespace mro
