#include "mro/serialize.hpp"

#include <json.hpp>

namespace mro {

namespace {

using nlohmann::json;

json costs_json(const PlanCosts& costs) {
    json per = json::array();
    for (const ComponentCosts& c : costs.per_component)
        per.push_back({{"e_m", c.e_m},
                       {"e_c", c.e_c},
                       {"e_com", c.e_com},
                       {"t_m", c.t_m},
                       {"t_c", c.t_c},
                       {"t_com", c.t_com}});
    return {{"energy_J", costs.energy},
            {"time_s", costs.time},
            {"uplink_load_bps", costs.uplink_load},
            {"per_component", std::move(per)}};
}

json plan_json(const OffloadPlan& plan) {
    return {{"placement", plan.placement},
            {"split", plan.split},
            {"receive", plan.receive}};
}

}  // namespace

std::string plan_costs_to_json_text(const PlanCosts& costs) {
    return costs_json(costs).dump(2) + "\n";
}

std::string solve_report_to_json_text(const SolveReport& report) {
    json history = json::array();
    for (const Multipliers& m : report.multiplier_history)
        history.push_back({{"kappa", m.kappa}, {"zeta", m.zeta}, {"phi", m.phi}});
    json root = {{"plan", plan_json(report.plan)},
                 {"costs", costs_json(report.costs)},
                 {"outer_iters", report.outer_iters},
                 {"inner_iters_total", report.inner_iters_total},
                 {"converged", report.converged},
                 {"feasible", report.feasible},
                 {"multiplier_history", std::move(history)}};
    return root.dump(2) + "\n";
}

}  // namespace mro
