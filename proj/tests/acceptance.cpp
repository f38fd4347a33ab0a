// Acceptance suite: every release criterion in one binary, one pass/fail
// line each. Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include "mro/bench.hpp"
#include "mro/energy.hpp"
#include "mro/exact.hpp"
#include "mro/io.hpp"
#include "mro/lagrangian.hpp"
#include "mro/solver.hpp"
#include "mro/synth.hpp"
#include "support/generators.hpp"
#include "support/reference_model.hpp"

using namespace mro;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t0;

void begin() { t0 = std::chrono::steady_clock::now(); }

void report(int id, const char* name, bool pass, const std::string& detail) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %d. %s: %s [%.1fs]\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t rep) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (rep + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

// --- 1. model fidelity ------------------------------------------------

void criterion_model_fidelity() {
    begin();
    std::mt19937_64 rng(101);
    double worst = 0;
    for (int it = 0; it < 1000; ++it) {
        const Instance inst = testgen::random_instance(rng, 6, 3);
        const OffloadPlan plan = testgen::random_plan(inst, rng);
        const bool rtt = it % 2 == 0;
        const PlanCosts costs = plan_costs(inst, plan, {.rtt_model = rtt});
        const oracle::Totals expect = oracle::evaluate(inst, plan, rtt);

        auto rel = [](double got, double want) {
            return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
        };
        worst = std::max(worst, rel(costs.energy, expect.energy));
        worst = std::max(worst, rel(costs.time, expect.time));
        for (int i = 0; i < inst.m(); ++i) {
            worst = std::max(worst,
                             rel(costs.per_component[i].energy(), expect.component_energy[i]));
            worst = std::max(worst, rel(costs.per_component[i].time(), expect.component_time[i]));
        }
        for (int k = 0; k < inst.k(); ++k)
            worst = std::max(worst, rel(costs.uplink_load[k], expect.uplink_load[k]));
    }
    report(1, "model fidelity vs literal expansion", worst <= 1e-12,
           fmt("max rel err %.2e (limit 1e-12) over 1000 states", worst));
}

// --- 2. coordinate identity -------------------------------------------

void criterion_coordinate_identity() {
    begin();
    std::mt19937_64 rng(202);
    double worst = 0;
    for (int it = 0; it < 500; ++it) {
        const Instance inst = testgen::random_instance(rng, 6, 3);
        const OffloadPlan plan = testgen::random_plan(inst, rng);
        const Multipliers mult = testgen::random_multipliers(inst, rng);
        const EvalOptions opts{.rtt_model = it % 2 == 0, .phi_outside_sum = it % 3 == 0};
        for (int i = 0; i < inst.m(); ++i) {
            OffloadPlan on = plan;
            on.placement[i] = 1;
            OffloadPlan off = plan;
            off.placement[i] = 0;
            const double lhs = lagrangian_value(inst, on, mult, opts) -
                               lagrangian_value(inst, off, mult, opts);
            const double rhs = delta_i(inst, plan, mult, i, opts);
            worst = std::max(worst, std::abs(lhs - rhs) /
                                        std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        }
    }
    report(2, "placement coefficient = objective difference", worst <= 1e-9,
           fmt("max rel err %.2e (limit 1e-9) over 500 states", worst));
}

// --- 3. exhaustive optimality -----------------------------------------

void criterion_exhaustive_optimality() {
    begin();
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> m_dist(4, 10);
    bool dominated = true;
    bool monotone = true;
    for (int it = 0; it < 200; ++it) {
        const Instance inst = synthesize_instance(m_dist(rng), 2, rng());
        const ExactResult exact = exhaustive_solve(inst);
        if (!exact.feasible) {
            dominated = false;  // the all-device plan always fits the default budget
            continue;
        }
        const double local = plan_costs(inst, all_local_plan(inst)).energy;
        if (exact.best_energy > local + 1e-9) dominated = false;
        const RemoteBaseline remote = baseline_remote(inst);
        if (remote.feasible && validate_plan(inst, remote.plan).empty() &&
            exact.best_energy > plan_costs(inst, remote.plan).energy + 1e-9)
            dominated = false;
        const SolveReport iterative = solve(inst);
        if (iterative.feasible && exact.best_energy > iterative.costs.energy + 1e-9)
            dominated = false;

        double previous = std::numeric_limits<double>::infinity();
        for (double factor : {0.5, 0.75, 1.0, 1.5, 2.5}) {
            Instance scaled = inst;
            scaled.t_req = factor * inst.t_req;
            const ExactResult step = exhaustive_solve(scaled);
            const double value =
                step.feasible ? step.best_energy : std::numeric_limits<double>::infinity();
            if (value > previous + 1e-9) monotone = false;
            previous = value;
        }
    }
    report(3, "reference solver dominates and is budget-monotone", dominated && monotone,
           std::string("dominated=") + (dominated ? "yes" : "no") + " monotone=" +
               (monotone ? "yes" : "no") + " over 200 instances");
}

// --- 4/5/9. bundled-profile study -------------------------------------

struct StudyResult {
    double mean_gap = 0;
    double mean_iter_norm = 0;
    double mean_remote_norm = 0;
    int median_outer = 0;
    double median_inner_per_outer = 0;
};

StudyResult run_study() {
    const Instance base = load_instance(testgen::data_file("paper14.json"));
    StudyResult out;
    std::vector<int> outers;
    std::vector<double> inner_rates;
    for (int rep = 0; rep < 100; ++rep) {
        const Instance inst = resample_instance(base, mix(404, rep));
        const SolveReport it = solve(inst);
        const ExactResult exact = exhaustive_solve(inst);
        const double local = plan_costs(inst, all_local_plan(inst)).energy;
        const double remote = plan_costs(inst, baseline_remote(inst).plan).energy;
        out.mean_gap += (it.costs.energy - exact.best_energy) / exact.best_energy / 100.0;
        out.mean_iter_norm += it.costs.energy / local / 100.0;
        out.mean_remote_norm += remote / local / 100.0;
        outers.push_back(it.outer_iters);
        inner_rates.push_back(static_cast<double>(it.inner_iters_total) /
                              std::max(1, it.outer_iters));
    }
    std::sort(outers.begin(), outers.end());
    std::sort(inner_rates.begin(), inner_rates.end());
    out.median_outer = outers[outers.size() / 2];
    out.median_inner_per_outer = inner_rates[inner_rates.size() / 2];
    return out;
}

// --- 6. latency sweep directions --------------------------------------

bool sweep_direction(const Instance& base, int radio, double lo, double hi, bool expect_rise,
                     double* range) {
    const int points = 5;
    const int reps = 40;
    std::vector<double> mean(points, 0.0);
    for (int p = 0; p < points; ++p) {
        const double rtt = lo + (hi - lo) * p / (points - 1);
        for (int rep = 0; rep < reps; ++rep) {
            Instance inst = resample_instance(base, mix(606, rep));
            inst.radios[radio].rtt = rtt;
            IterativeConfig cfg;
            cfg.opts.rtt_model = true;
            const SolveReport report = solve(inst, cfg);
            double carried = 0;
            double total = 0;
            for (int i = 0; i < inst.m(); ++i) {
                if (report.plan.placement[i]) continue;
                for (int j = 0; j < inst.m(); ++j)
                    if (j != i && inst.graph.edge(i, j) && report.plan.placement[j]) {
                        total += inst.graph.bits(i, j);
                        carried += inst.graph.bits(i, j) *
                                   report.plan.split[static_cast<std::size_t>(i) * inst.k()];
                    }
            }
            mean[p] += (total > 0 ? carried / total : 0.0) / reps;
        }
    }
    *range = mean[points - 1] - mean[0];
    for (int p = 1; p < points; ++p) {
        if (expect_rise && mean[p] < mean[p - 1] - 1e-9) return false;
        if (!expect_rise && mean[p] > mean[p - 1] + 1e-9) return false;
    }
    return true;
}

void criterion_latency_direction() {
    begin();
    const Instance base = load_instance(testgen::data_file("paper14.json"));
    double down_range = 0;
    double up_range = 0;
    const bool wifi_ok = sweep_direction(base, 0, 0.040, 0.160, false, &down_range);
    const bool lte_ok = sweep_direction(base, 1, 0.050, 0.200, true, &up_range);
    report(6, "share of radio 0 tracks relative latency", wifi_ok && lte_ok,
           fmt("radio0 sweep delta %+.4f (<=0), radio1 sweep delta %+.4f (>=0)", down_range,
               up_range));
}

// --- 7. split program exactness ---------------------------------------

void criterion_lp_exactness() {
    begin();
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0;
    int compared = 0;
    int status_mismatch = 0;

    for (int it = 0; it < 500; ++it) {
        SynthRanges ranges;
        ranges.data_min_bits = 5e4;
        ranges.data_max_bits = 5e5;  // keeps the grid's rounding error below tolerance
        std::uniform_int_distribution<int> m_dist(3, 6);
        std::uniform_int_distribution<int> k_dist(1, 2);
        Instance inst = synthesize_instance(m_dist(rng), k_dist(rng), rng(), ranges);

        // Random placement with at most two uploading components so the
        // grid stays dense and fast.
        const auto receive = assign_receive(inst);
        std::vector<std::uint8_t> placement;
        int uploaders = 0;
        for (int attempt = 0; attempt < 50; ++attempt) {
            placement.assign(inst.m(), 0);
            for (int i = 0; i < inst.m(); ++i)
                if (!inst.pinned(i)) placement[i] = unit(rng) < 0.5 ? 1 : 0;
            uploaders = 0;
            for (int i = 0; i < inst.m(); ++i) {
                if (placement[i]) continue;
                for (int j = 0; j < inst.m(); ++j)
                    if (j != i && inst.graph.edge(i, j) && placement[j]) {
                        ++uploaders;
                        break;
                    }
            }
            if (uploaders <= 2) break;
        }
        if (uploaders > 2) continue;

        // Budget: either clearly generous or clearly impossible.
        inst.t_req = unit(rng) < 0.15 ? inst.t_req * 1e-3
                                      : plan_costs(inst, all_local_plan(inst)).time + 1.0;

        const LinearProgram lp = build_lp(inst, placement, receive);
        const LpSolution sol = solve_lp(lp);

        // Dense grid over each uploader's simplex row.
        const int K = inst.k();
        std::vector<int> upload_ids;
        for (std::size_t col = 0; col < lp.variable_map.size(); col += K)
            upload_ids.push_back(lp.variable_map[col].first);
        const int steps = 1000;
        double best = std::numeric_limits<double>::infinity();
        bool grid_feasible = false;
        auto evaluate = [&](const std::vector<double>& x) {
            for (std::size_t r = 0; r < lp.ub_coeffs.size(); ++r) {
                double lhs = 0;
                for (int c = 0; c < lp.num_vars; ++c) lhs += lp.ub_coeffs[r][c] * x[c];
                if (lhs > lp.ub_rhs[r] + 1e-12) return;
            }
            double obj = lp.objective_const;
            for (int c = 0; c < lp.num_vars; ++c) obj += lp.objective[c] * x[c];
            grid_feasible = true;
            best = std::min(best, obj);
        };
        std::vector<double> x(lp.num_vars, 0.0);
        if (lp.trivially_infeasible) {
            // nothing to scan
        } else if (upload_ids.empty()) {
            evaluate(x);
        } else if (K == 1) {
            for (double& v : x) v = 1.0;  // the allocation rows leave a single point
            evaluate(x);
        } else if (upload_ids.size() == 1) {
            for (int g = 0; g <= steps; ++g) {
                x[0] = static_cast<double>(g) / steps;
                x[1] = 1.0 - x[0];
                evaluate(x);
            }
        } else {
            for (int g = 0; g <= steps; ++g)
                for (int h = 0; h <= steps; ++h) {
                    x[0] = static_cast<double>(g) / steps;
                    x[1] = 1.0 - x[0];
                    x[2] = static_cast<double>(h) / steps;
                    x[3] = 1.0 - x[2];
                    evaluate(x);
                }
        }

        if (sol.status == LpStatus::Optimal && grid_feasible) {
            ++compared;
            worst = std::max(worst, std::abs(sol.objective - best));
            if (sol.objective > best + 1e-9) ++status_mismatch;  // grid must not beat the solver
        } else if (sol.status == LpStatus::Optimal || grid_feasible) {
            ++status_mismatch;
        }
    }
    report(7, "split program matches the grid oracle", worst <= 1e-3 && status_mismatch == 0,
           fmt("max |obj diff| %.2e (limit 1e-3), %.0f status mismatches, %.0f compared", worst,
               static_cast<double>(status_mismatch), static_cast<double>(compared)));
}

// --- 8. feasibility and termination ------------------------------------

void criterion_feasibility_termination() {
    begin();
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> m_dist(2, 12);
    std::uniform_int_distribution<int> k_dist(1, 3);
    bool ok = true;
    for (int it = 0; it < 1000; ++it) {
        SynthRanges ranges;
        if (it % 5 == 0) ranges.data_min_bits = ranges.data_max_bits = 0.0;
        if (it % 7 == 0) ranges.extra_edge_prob = 0.9;
        Instance inst = synthesize_instance(m_dist(rng), k_dist(rng), rng(), ranges);
        switch (it % 4) {
            case 0: inst.t_req *= 1e-3; break;
            case 1: inst.t_req *= 0.5; break;
            case 2: break;
            default: inst.t_req *= 100; break;
        }
        IterativeConfig cfg;
        const SolveReport report = solve(inst, cfg);
        if (report.outer_iters > cfg.max_outer) ok = false;
        if (report.inner_iters_total > static_cast<long>(cfg.max_outer) * cfg.max_inner)
            ok = false;
        if (report.feasible != validate_plan(inst, report.plan).empty()) ok = false;
    }
    report(8, "termination within caps, feasibility flags honest", ok,
           "1000 adversarial instances incl. impossible budgets");
}

}  // namespace

int main() {
    criterion_model_fidelity();
    criterion_coordinate_identity();
    criterion_exhaustive_optimality();

    begin();
    const StudyResult study = run_study();
    report(4, "iterative within 10% of the reference on the bundled profile",
           study.mean_gap <= 0.10, fmt("mean gap %.2f%% (limit 10%%)", 100 * study.mean_gap));
    begin();
    report(5, "iterative beats both baselines on average",
           study.mean_iter_norm < study.mean_remote_norm && study.mean_iter_norm < 1.0,
           fmt("iterative %.3f < remote %.3f and < 1.0", study.mean_iter_norm,
               study.mean_remote_norm));

    criterion_latency_direction();
    criterion_lp_exactness();
    criterion_feasibility_termination();

    begin();
    report(9, "iteration economy on the bundled profile",
           study.median_outer <= 20 && study.median_inner_per_outer <= 10,
           fmt("median outer %.0f (limit 20), median inner/outer %.2f (limit 10)",
               static_cast<double>(study.median_outer), study.median_inner_per_outer));

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "RESULT", failures);
    return failures;
}
