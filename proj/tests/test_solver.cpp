#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "mro/energy.hpp"
#include "mro/exact.hpp"
#include "mro/io.hpp"
#include "mro/serialize.hpp"
#include "mro/solver.hpp"
#include "support/generators.hpp"

using namespace mro;

namespace {

Instance edgeless(int m) {
    Instance inst;
    inst.graph.m = m;
    inst.graph.alpha.assign(static_cast<std::size_t>(m) * m, 0);
    inst.graph.data.assign(static_cast<std::size_t>(m) * m, 0.0);
    inst.graph.local_time.assign(m, 0.2);
    inst.graph.cloud_time.assign(m, 0.04);
    inst.device.active_power.assign(m, 0.6);
    inst.device.idle_power = 0.02;
    inst.radios.push_back({"r0", 1e6, 2e6, 0.3, 0.1, 1.5e6, 0.0});
    inst.t_req = 10.0;
    validate_instance(inst);
    return inst;
}

Multipliers default_multipliers(const Instance& inst) {
    Multipliers mult;
    mult.kappa = 0.1;
    mult.zeta.assign(inst.k(), 1e-6);
    mult.phi.assign(inst.m(), 0.1);
    return mult;
}

}  // namespace

TEST_CASE("refinement settles immediately without edges") {
    const Instance inst = edgeless(3);
    const Multipliers mult = default_multipliers(inst);
    OffloadPlan plan;
    plan.receive = assign_receive(inst);
    plan.placement = initial_placement(inst, mult);
    plan.split = nu_star(inst, plan, mult);

    const InnerResult result = inner_modification_loop(inst, plan, mult, {});
    CHECK(result.iterations == 1);
    CHECK(result.plan.placement == initial_placement(inst, mult));
}

TEST_CASE("refinement matches an independent trace of its rules") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 25; ++it) {
        const Instance inst = testgen::random_instance(rng, 5, 2);
        const Multipliers mult = testgen::random_multipliers(inst, rng);
        IterativeConfig cfg;

        OffloadPlan start;
        start.receive = assign_receive(inst);
        start.placement = initial_placement(inst, mult);
        start.split = nu_star(inst, start, mult);

        // Re-run the documented update rules step by step.
        OffloadPlan plan = start;
        std::vector<double> prev(inst.m());
        for (int i = 0; i < inst.m(); ++i) prev[i] = lambda_i(inst, mult, i);
        double l_prev = lagrangian_value(inst, plan, mult);
        OffloadPlan best = plan;
        double l_best = l_prev;
        int iterations = 0;
        for (int r = 0; r < cfg.max_inner; ++r) {
            ++iterations;
            const auto cur = delta_all(inst, plan, mult);
            for (int i = 0; i < inst.m(); ++i)
                plan.placement[i] = (!inst.pinned(i) && cur[i] < 0.0) ? 1 : 0;
            plan.split = nu_star(inst, plan, mult);
            int flip = -1;
            for (int i = 0; i < inst.m(); ++i) {
                if (inst.pinned(i)) continue;
                if (cur[i] * prev[i] < 0.0 && (flip < 0 || cur[i] < cur[flip])) flip = i;
            }
            if (flip >= 0) {
                plan.placement[flip] ^= 1;
                plan.split = nu_star(inst, plan, mult);
            }
            const double l_cur = lagrangian_value(inst, plan, mult);
            if (l_cur < l_best) {
                best = plan;
                l_best = l_cur;
            }
            if (l_cur >= l_prev) break;
            l_prev = l_cur;
            prev = cur;
        }

        std::vector<double> entering(inst.m());
        for (int i = 0; i < inst.m(); ++i) entering[i] = lambda_i(inst, mult, i);
        const InnerResult got = inner_modification_loop(inst, start, mult, cfg, entering);
        CHECK(got.iterations == iterations);
        CHECK(got.plan.placement == best.placement);
        CHECK(got.plan.split == best.split);
    }
}

TEST_CASE("refinement never ends above its entry value") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 30; ++it) {
        const Instance inst = testgen::random_instance(rng);
        const Multipliers mult = testgen::random_multipliers(inst, rng);
        OffloadPlan start;
        start.receive = assign_receive(inst);
        start.placement = initial_placement(inst, mult);
        start.split = nu_star(inst, start, mult);
        const double l_start = lagrangian_value(inst, start, mult);
        const InnerResult result = inner_modification_loop(inst, start, mult, {});
        CHECK(lagrangian_value(inst, result.plan, mult) <= l_start + 1e-12);
    }
}

TEST_CASE("generous budget with free transfers offloads everything") {
    SynthRanges ranges;
    ranges.data_min_bits = ranges.data_max_bits = 0.0;
    Instance inst = synthesize_instance(8, 2, 51, ranges);
    inst.t_req = 1e9;
    // The flow-rate constraint charges the offered load per edge whatever
    // the payload, so "free transfers" needs a tiny demand rate too.
    for (RadioInterface& radio : inst.radios) radio.demand_rate = 1e4;
    const SolveReport report = solve(inst);
    REQUIRE(report.feasible);
    const ExactResult exact = exhaustive_solve(inst);
    CHECK(report.plan.placement == exact.best_plan.placement);
    CHECK(report.costs.energy == doctest::Approx(exact.best_energy).epsilon(1e-9));
    for (int i = 0; i < inst.m(); ++i)
        CHECK(static_cast<int>(report.plan.placement[i]) == (inst.pinned(i) ? 0 : 1));
}

TEST_CASE("hopeless radios force the device-only plan") {
    Instance inst = load_instance(testgen::data_file("paper14.json"));
    for (RadioInterface& radio : inst.radios) {
        radio.uplink_rate = 1e3;  // three orders too slow for the budget
        radio.downlink_rate = 1e3;
    }
    inst.t_req = 3.6;
    const SolveReport report = solve(inst);
    REQUIRE(report.feasible);
    for (auto b : report.plan.placement) CHECK(b == 0);
    const ExactResult exact = exhaustive_solve(inst);
    for (auto b : exact.best_plan.placement) CHECK(b == 0);
}

TEST_CASE("impossible budgets terminate with an infeasible report") {
    Instance inst = load_instance(testgen::data_file("paper14.json"));
    inst.t_req = 0.01;  // below every placement's processing time
    const SolveReport report = solve(inst);
    CHECK_FALSE(report.feasible);
    CHECK_FALSE(report.converged);
    CHECK(report.outer_iters <= 500);
    CHECK_FALSE(validate_plan(inst, report.plan).empty());
}

TEST_CASE("pinned components stay on the device at every iterate") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 10; ++it) {
        const Instance inst = testgen::random_instance(rng, 8, 2);
        IterativeConfig cfg;
        bool violated = false;
        cfg.iterate_observer = [&](const OffloadPlan& plan) {
            for (int i = 0; i < inst.m(); ++i)
                if (inst.pinned(i) && plan.placement[i] != 0) violated = true;
        };
        const SolveReport report = solve(inst, cfg);
        CHECK_FALSE(violated);
        for (int i = 0; i < inst.m(); ++i)
            if (inst.pinned(i)) CHECK(report.plan.placement[i] == 0);
    }
}

TEST_CASE("feasible reports pass validation, always within caps") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 60; ++it) {
        Instance inst = testgen::random_instance(rng, 10, 3);
        switch (it % 4) {
            case 0: inst.t_req *= 0.02; break;  // impossible
            case 1: inst.t_req *= 0.6; break;   // tight
            case 2: break;                      // exactly the local time
            default: inst.t_req *= 50; break;   // slack
        }
        IterativeConfig cfg;
        const SolveReport report = solve(inst, cfg);
        CHECK(report.outer_iters <= cfg.max_outer);
        CHECK(report.inner_iters_total <= static_cast<long>(cfg.max_outer) * cfg.max_inner);
        CHECK(report.feasible == validate_plan(inst, report.plan).empty());
        CHECK(report.costs.energy ==
              doctest::Approx(plan_costs(inst, report.plan).energy).epsilon(1e-12));
        CHECK(report.multiplier_history.size() ==
              static_cast<std::size_t>(report.outer_iters) + 1);
    }
}

TEST_CASE("close to the reference solver on mid-sized instances") {
    std::mt19937_64 rng(59);
    int within = 0;
    const int trials = 40;
    for (int it = 0; it < trials; ++it) {
        const Instance inst = synthesize_instance(8, 2, rng());
        const SolveReport report = solve(inst);
        const ExactResult exact = exhaustive_solve(inst);
        if (exact.feasible && report.feasible &&
            report.costs.energy <= 1.10 * exact.best_energy + 1e-12)
            ++within;
    }
    CHECK(within >= trials * 9 / 10);
}

TEST_CASE("solve is deterministic") {
    const Instance inst = synthesize_instance(9, 2, 61);
    const SolveReport a = solve(inst);
    const SolveReport b = solve(inst);
    CHECK(a.plan.placement == b.plan.placement);
    CHECK(a.plan.split == b.plan.split);
    CHECK(a.costs.energy == b.costs.energy);
    CHECK(a.outer_iters == b.outer_iters);
}

TEST_CASE("report serializes to JSON") {
    const Instance inst = synthesize_instance(6, 2, 71);
    const SolveReport report = solve(inst);
    const std::string text = solve_report_to_json_text(report);
    const nlohmann::json parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("feasible").get<bool>() == report.feasible);
    CHECK(parsed.at("outer_iters").get<int>() == report.outer_iters);
    CHECK(parsed.at("costs").at("energy_J").get<double>() ==
          doctest::Approx(report.costs.energy));
    CHECK(parsed.at("multiplier_history").size() == report.multiplier_history.size());
    CHECK(parsed.at("plan").at("placement").size() == static_cast<std::size_t>(inst.m()));
}
