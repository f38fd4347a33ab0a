#include "mro/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mro {

namespace {

// Scalar measure of how far a plan is from feasibility; used to pick the
// least-violating iterate when nothing feasible is ever seen.
double violation_score(const Instance& inst, const PlanCosts& costs) {
    double score = 0;
    if (costs.time > inst.t_req) score += (costs.time - inst.t_req) / inst.t_req;
    for (int k = 0; k < inst.k(); ++k) {
        const double cap = inst.radios[k].uplink_rate * (1.0 - uplink_margin_factor);
        if (costs.uplink_load[k] > cap)
            score += (costs.uplink_load[k] - cap) / inst.radios[k].uplink_rate;
    }
    return score;
}

// Relative change |next - prev| / |next|, absolute when next is zero.
bool settled(double prev, double next, double tol) {
    const double change = std::abs(next - prev);
    if (next == 0.0) return change < tol;
    return change / std::abs(next) < tol;
}

// The split that actually minimizes the relaxed objective for a fixed
// placement: all of each active row on the radio with the smallest
// preference weight (ties to the lowest index). Tracked alongside the
// closed-form iterate, which spreads rows too evenly to stay close to
// the reference solver on energy.
std::vector<double> sharp_split(const Instance& inst, const OffloadPlan& plan,
                                const Multipliers& mult, const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    std::vector<double> split(static_cast<std::size_t>(m) * K, 0.0);
    for (int i = 0; i < m; ++i) {
        if (plan.placement[i] != 0 || inst.graph.out_degree(i) == 0) continue;
        int best = 0;
        double best_w = omega(inst, plan, mult, i, 0, opts);
        for (int k = 1; k < K; ++k) {
            const double w = omega(inst, plan, mult, i, k, opts);
            if (w < best_w) {
                best = k;
                best_w = w;
            }
        }
        split[static_cast<std::size_t>(i) * K + best] = 1.0;
    }
    return split;
}

}  // namespace

InnerResult inner_modification_loop(const Instance& inst, const OffloadPlan& start,
                                    const Multipliers& mult, const IterativeConfig& cfg,
                                    const std::vector<double>& entering_delta,
                                    const std::function<void(const OffloadPlan&)>& visit) {
    const int m = inst.m();

    OffloadPlan plan = start;
    std::vector<double> delta_prev =
        entering_delta.empty() ? delta_all(inst, plan, mult, cfg.opts) : entering_delta;

    double l_prev = lagrangian_value(inst, plan, mult, cfg.opts);
    OffloadPlan best = plan;
    double l_best = l_prev;
    int iterations = 0;

    for (int r = 0; r < cfg.max_inner; ++r) {
        ++iterations;
        const std::vector<double> delta_cur = delta_all(inst, plan, mult, cfg.opts);

        for (int i = 0; i < m; ++i)
            plan.placement[i] = (!inst.pinned(i) && delta_cur[i] < 0.0) ? 1 : 0;
        plan.split = nu_star(inst, plan, mult, cfg.opts);

        // A sign change between consecutive coefficient vectors marks an
        // oscillating component; force the most favorable one over.
        int flip = -1;
        for (int i = 0; i < m; ++i) {
            if (inst.pinned(i)) continue;
            if (delta_cur[i] * delta_prev[i] < 0.0 && (flip < 0 || delta_cur[i] < delta_cur[flip]))
                flip = i;
        }
        if (flip >= 0) {
            plan.placement[flip] ^= 1;
            plan.split = nu_star(inst, plan, mult, cfg.opts);
        }

        if (visit) visit(plan);
        const double l_cur = lagrangian_value(inst, plan, mult, cfg.opts);
        if (l_cur < l_best) {
            best = plan;
            l_best = l_cur;
        }
        if (l_cur >= l_prev) break;
        l_prev = l_cur;
        delta_prev = delta_cur;
    }
    return {std::move(best), iterations};
}

SolveReport solve(const Instance& inst, const IterativeConfig& cfg) {
    const int m = inst.m();
    const int K = inst.k();

    Multipliers mult;
    mult.kappa = cfg.init.kappa;
    mult.zeta.assign(K, cfg.init.zeta);
    mult.phi.assign(m, cfg.init.phi);

    OffloadPlan plan;
    plan.receive = assign_receive(inst, cfg.downlink);
    plan.placement = initial_placement(inst, mult);
    plan.split = nu_star(inst, plan, mult, cfg.opts);

    std::vector<double> entering_delta(m);
    for (int i = 0; i < m; ++i) entering_delta[i] = lambda_i(inst, mult, i);

    SolveReport report;
    report.multiplier_history.push_back(mult);
    if (cfg.iterate_observer) cfg.iterate_observer(plan);

    bool have_feasible = false;
    bool improved = false;
    OffloadPlan best_plan = plan;
    double best_energy = std::numeric_limits<double>::infinity();
    double least_violation = std::numeric_limits<double>::infinity();

    auto consider = [&](const OffloadPlan& candidate, const PlanCosts& costs) {
        const bool ok = validate_plan(inst, candidate, cfg.opts).empty();
        if (ok) {
            if (!have_feasible || costs.energy < best_energy - 1e-12) {
                have_feasible = true;
                improved = true;
                best_plan = candidate;
                best_energy = costs.energy;
            }
        } else if (!have_feasible) {
            const double score = violation_score(inst, costs);
            if (score < least_violation) {
                least_violation = score;
                best_plan = candidate;
                best_energy = costs.energy;
            }
        }
        return ok;
    };

    auto consider_with_sharp = [&](const OffloadPlan& candidate) {
        bool ok = consider(candidate, plan_costs(inst, candidate, cfg.opts));
        OffloadPlan sharp = candidate;
        sharp.split = sharp_split(inst, candidate, mult, cfg.opts);
        if (sharp.split != candidate.split)
            ok = consider(sharp, plan_costs(inst, sharp, cfg.opts)) || ok;
        return ok;
    };

    // The device-only plan is always on the table; the relaxation cannot
    // reach it whenever the cloud is both faster and cheaper per
    // component, yet it is the only feasible plan under tight budgets.
    consider_with_sharp(all_local_plan(inst, cfg.downlink));
    consider_with_sharp(plan);

    int stalled = 0;
    for (int s = 1; s <= cfg.max_outer; ++s) {
        report.outer_iters = s;

        bool any_negative = false;
        for (int i = 0; i < m; ++i)
            if (!inst.pinned(i) && entering_delta[i] < 0.0) any_negative = true;
        if (any_negative) {
            // Every visited iterate is a candidate, including the ones the
            // descent walks past on its way down.
            auto visit = [&](const OffloadPlan& p) {
                consider_with_sharp(p);
                if (cfg.iterate_observer) cfg.iterate_observer(p);
            };
            InnerResult inner =
                inner_modification_loop(inst, plan, mult, cfg, entering_delta, visit);
            plan = std::move(inner.plan);
            report.inner_iters_total += inner.iterations;
        }

        const PlanCosts costs = plan_costs(inst, plan, cfg.opts);
        const bool feasible_now = consider_with_sharp(plan);

        // Greedy flip-back toward constraint satisfaction: starting from
        // an offload-heavy state, keep returning the cloud component with
        // the largest flip coefficient to the device, re-deriving the
        // splits at each stage. The walk ends at the all-device plan, so
        // it always terminates; every stage is a candidate, but only the
        // iterate itself gates convergence. Walking from the closed-form
        // initial placement as well covers cuts the simultaneous sign
        // update jumps over.
        auto flip_back_walk = [&](OffloadPlan walk) {
            for (int guard = 0; guard < m; ++guard) {
                const std::vector<double> delta = delta_all(inst, walk, mult, cfg.opts);
                int pick = -1;
                for (int i = 0; i < m; ++i)
                    if (walk.placement[i] && (pick < 0 || delta[i] > delta[pick])) pick = i;
                if (pick < 0) break;
                walk.placement[pick] = 0;
                walk.split = nu_star(inst, walk, mult, cfg.opts);
                if (consider_with_sharp(walk)) break;
            }
        };
        if (!feasible_now) flip_back_walk(plan);
        {
            OffloadPlan deep;
            deep.placement = initial_placement(inst, mult);
            deep.receive = plan.receive;
            deep.split = nu_star(inst, deep, mult, cfg.opts);
            consider_with_sharp(deep);
            flip_back_walk(std::move(deep));
        }

        // Projected subgradient step with 1/sqrt(s) decay; residuals are
        // normalized by their constraint bound so one step scale serves
        // instances of any magnitude.
        const double decay = 1.0 / std::sqrt(static_cast<double>(s));
        Multipliers next = mult;

        next.kappa = std::max(
            0.0, mult.kappa - cfg.steps.eps_kappa * decay * (inst.t_req - costs.time) / inst.t_req);

        for (int k = 0; k < K; ++k) {
            double flow = 0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (j == i || !inst.graph.edge(i, j)) continue;
                    const double cross = std::abs(static_cast<double>(plan.placement[i]) -
                                                  static_cast<double>(plan.placement[j])) *
                                         (1.0 - plan.placement[i]);
                    flow += cross * plan.split[static_cast<std::size_t>(i) * K + k] *
                            inst.radios[k].demand_rate;
                }
            const double resid = (inst.radios[k].uplink_rate - flow) / inst.radios[k].uplink_rate;
            next.zeta[k] = std::max(0.0, mult.zeta[k] - cfg.steps.eps_zeta * decay * resid);
        }

        for (int i = 0; i < m; ++i) {
            // Only rows with a live allocation constraint are priced; a
            // cloud-side or edge-less component has nothing to split.
            if (plan.placement[i] != 0 || inst.graph.out_degree(i) == 0) continue;
            double row = 0;
            for (int k = 0; k < K; ++k) row += plan.split[static_cast<std::size_t>(i) * K + k];
            next.phi[i] = mult.phi[i] - cfg.steps.eps_phi * decay * (1.0 - row);
        }

        bool stable = settled(mult.kappa, next.kappa, cfg.steps.tol_kappa);
        for (int k = 0; k < K && stable; ++k)
            stable = settled(mult.zeta[k], next.zeta[k], cfg.steps.tol_zeta);
        for (int i = 0; i < m && stable; ++i)
            stable = settled(mult.phi[i], next.phi[i], cfg.steps.tol_phi);

        mult = std::move(next);
        report.multiplier_history.push_back(mult);

        if (stable && feasible_now) {
            report.converged = true;
            break;
        }
        stalled = improved ? 0 : stalled + 1;
        improved = false;
        if (cfg.stall_limit > 0 && feasible_now && stalled >= cfg.stall_limit) break;
        entering_delta = delta_all(inst, plan, mult, cfg.opts);
    }

    report.plan = std::move(best_plan);
    report.costs = plan_costs(inst, report.plan, cfg.opts);
    report.feasible = have_feasible;
    return report;
}

}  // namespace mro
