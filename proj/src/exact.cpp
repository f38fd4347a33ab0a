#include "mro/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mro/energy.hpp"

namespace mro {

namespace {

OffloadPlan plan_from_lp(const Instance& inst, const std::vector<std::uint8_t>& placement,
                         const std::vector<std::uint8_t>& receive, const LinearProgram& lp,
                         const std::vector<double>& values) {
    OffloadPlan plan;
    plan.placement = placement;
    plan.receive = receive;
    plan.split.assign(static_cast<std::size_t>(inst.m()) * inst.k(), 0.0);
    for (std::size_t col = 0; col < lp.variable_map.size(); ++col) {
        const auto [i, k] = lp.variable_map[col];
        plan.split[static_cast<std::size_t>(i) * inst.k() + k] = values[col];
    }
    return plan;
}

bool placement_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Candidate {
    bool valid = false;
    double energy = 0;
    double time = 0;
    OffloadPlan plan;
};

// Deterministic reduction order: lower energy wins, exact ties go to the
// lexicographically smaller placement.
void take_better(Candidate& best, Candidate&& next) {
    if (!next.valid) return;
    if (!best.valid || next.energy < best.energy - 1e-12 ||
        (std::abs(next.energy - best.energy) <= 1e-12 &&
         placement_less(next.plan.placement, best.plan.placement))) {
        best = std::move(next);
    }
}

}  // namespace

LinearProgram build_lp(const Instance& inst, const std::vector<std::uint8_t>& placement,
                       const std::vector<std::uint8_t>& receive, const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    const AppGraph& g = inst.graph;

    LinearProgram lp;

    // Fixed part: processing energy/time plus the downlink transfers,
    // which do not depend on the split variables.
    double const_energy = 0;
    double const_time = 0;
    for (int i = 0; i < m; ++i) {
        if (placement[i]) {
            const_energy += inst.device.idle_power * g.cloud_time[i];
            const_time += g.cloud_time[i];
        } else {
            const_energy += inst.device.active_power[i] * g.local_time[i];
            const_time += g.local_time[i];
        }
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (j == i || !g.edge(i, j)) continue;
            if (!(placement[i] && !placement[j])) continue;  // cloud -> device edge
            for (int k = 0; k < K; ++k) {
                const double gamma = receive[static_cast<std::size_t>(j) * K + k];
                if (gamma == 0.0) continue;
                const double dt = downlink_transfer_time(g.bits(i, j), inst.radios[k], opts);
                const_energy += (inst.device.idle_power + inst.radios[k].rx_power) * dt;
                const_time += 2.0 * dt;  // waiting counted at both endpoints
            }
        }
    lp.objective_const = const_energy;

    // One variable per uploading component and radio.
    std::vector<int> uploads(m, 0);
    for (int i = 0; i < m; ++i) {
        if (placement[i]) continue;
        for (int j = 0; j < m; ++j)
            if (j != i && g.edge(i, j) && placement[j]) ++uploads[i];
    }
    std::vector<int> first_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (uploads[i] == 0) continue;
        first_col[i] = lp.num_vars;
        for (int k = 0; k < K; ++k) lp.variable_map.emplace_back(i, k);
        lp.num_vars += K;
    }
    lp.objective.assign(lp.num_vars, 0.0);
    lp.upper_bound.assign(lp.num_vars, 1.0);

    std::vector<double> time_coeff(lp.num_vars, 0.0);
    for (int i = 0; i < m; ++i) {
        if (first_col[i] < 0) continue;
        for (int j = 0; j < m; ++j) {
            if (j == i || !g.edge(i, j) || !placement[j]) continue;
            for (int k = 0; k < K; ++k) {
                const double ut = uplink_transfer_time(g.bits(i, j), inst.radios[k], opts);
                lp.objective[first_col[i] + k] +=
                    (inst.radios[k].tx_power + inst.device.idle_power) * ut;
                time_coeff[first_col[i] + k] += 2.0 * ut;
            }
        }
    }

    // Allocation rows: each uploading component splits exactly its data.
    for (int i = 0; i < m; ++i) {
        if (first_col[i] < 0) continue;
        std::vector<double> row(lp.num_vars, 0.0);
        for (int k = 0; k < K; ++k) row[first_col[i] + k] = 1.0;
        lp.eq_coeffs.push_back(std::move(row));
        lp.eq_rhs.push_back(1.0);
    }

    // Capacity rows: offered load below the uplink service rate.
    for (int k = 0; k < K; ++k) {
        std::vector<double> row(lp.num_vars, 0.0);
        bool any = false;
        for (int i = 0; i < m; ++i) {
            if (first_col[i] < 0) continue;
            row[first_col[i] + k] = uploads[i] * inst.radios[k].demand_rate;
            any = true;
        }
        if (!any) continue;
        lp.ub_coeffs.push_back(std::move(row));
        lp.ub_rhs.push_back(inst.radios[k].uplink_rate * (1.0 - uplink_margin_factor));
    }

    // Deadline row, with the fixed time folded into the bound.
    const double slack = inst.t_req - const_time;
    if (lp.num_vars > 0) {
        lp.ub_coeffs.push_back(time_coeff);
        lp.ub_rhs.push_back(slack);
    }
    if (slack < -1e-9) lp.trivially_infeasible = true;

    return lp;
}

ExactResult exhaustive_solve(const Instance& inst, const ExactConfig& cfg) {
    const int m = inst.m();
    const auto receive = assign_receive(inst, cfg.downlink);

    std::vector<int> free_ids;
    for (int i = 0; i < m; ++i)
        if (!inst.pinned(i)) free_ids.push_back(i);
    const int nf = static_cast<int>(free_ids.size());
    if (nf > cfg.max_free)
        throw std::invalid_argument("exhaustive_solve: " + std::to_string(nf) +
                                    " free components exceed the enumeration cap of " +
                                    std::to_string(cfg.max_free));

    const std::uint64_t total = std::uint64_t{1} << nf;

    auto scan = [&](std::uint64_t begin, std::uint64_t end, Candidate& best,
                    std::vector<PlacementRecord>* log) {
        std::vector<std::uint8_t> placement(m, 0);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const std::uint64_t gray = idx ^ (idx >> 1);
            for (int b = 0; b < nf; ++b)
                placement[free_ids[b]] = static_cast<std::uint8_t>((gray >> b) & 1u);

            const LinearProgram lp = build_lp(inst, placement, receive, cfg.opts);
            const LpSolution sol = solve_lp(lp);
            if (sol.status != LpStatus::Optimal) {
                if (log) log->push_back({placement, false, 0.0, 0.0});
                continue;
            }
            Candidate cand;
            cand.valid = true;
            cand.plan = plan_from_lp(inst, placement, receive, lp, sol.values);
            const PlanCosts costs = plan_costs(inst, cand.plan, cfg.opts);
            cand.energy = costs.energy;
            cand.time = costs.time;
            if (log) log->push_back({placement, true, cand.energy, cand.time});
            take_better(best, std::move(cand));
        }
    };

    Candidate best;
    std::vector<PlacementRecord> log;
    const int want = cfg.threads > 0 ? cfg.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    const int nthreads = std::max(1, std::min<int>(want, static_cast<int>(total / 64 + 1)));
    if (nthreads == 1) {
        scan(0, total, best, cfg.log ? &log : nullptr);
    } else {
        std::vector<Candidate> bests(nthreads);
        std::vector<std::vector<PlacementRecord>> logs(nthreads);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::uint64_t lo = chunk * t;
            const std::uint64_t hi = std::min(total, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { scan(lo, hi, bests[t], cfg.log ? &logs[t] : nullptr); });
        }
        for (auto& th : pool) th.join();
        for (int t = 0; t < nthreads; ++t) {
            take_better(best, std::move(bests[t]));
            log.insert(log.end(), logs[t].begin(), logs[t].end());
        }
    }

    ExactResult result;
    result.evaluated = static_cast<long>(total);
    result.per_placement_log = std::move(log);
    if (best.valid) {
        result.feasible = true;
        result.best_plan = std::move(best.plan);
        result.best_energy = best.energy;
        result.best_time = best.time;
    } else {
        result.best_plan = all_local_plan(inst, cfg.downlink);
        const PlanCosts costs = plan_costs(inst, result.best_plan, cfg.opts);
        result.best_energy = costs.energy;
        result.best_time = costs.time;
    }
    return result;
}

OffloadPlan baseline_local(const Instance& inst, const DownlinkPolicy& policy) {
    return all_local_plan(inst, policy);
}

RemoteBaseline baseline_remote(const Instance& inst, const DownlinkPolicy& policy,
                               const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    RemoteBaseline out;
    std::vector<std::uint8_t> placement(m, 1);
    for (int i = 0; i < m; ++i)
        if (inst.pinned(i)) placement[i] = 0;
    const auto receive = assign_receive(inst, policy);

    const LinearProgram lp = build_lp(inst, placement, receive, opts);
    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Optimal) {
        out.plan = plan_from_lp(inst, placement, receive, lp, sol.values);
        out.feasible = true;
    } else {
        out.plan.placement = placement;
        out.plan.receive = receive;
        out.plan.split.assign(static_cast<std::size_t>(m) * K, 0.0);
        for (std::size_t col = 0; col < lp.variable_map.size(); ++col) {
            const auto [i, k] = lp.variable_map[col];
            out.plan.split[static_cast<std::size_t>(i) * K + k] = 1.0 / K;
        }
        out.feasible = false;
    }
    return out;
}

}  // namespace mro
