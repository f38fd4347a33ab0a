#pragma once

#include <string>

#include "mro/energy.hpp"
#include "mro/solver.hpp"

namespace mro {

std::string plan_costs_to_json_text(const PlanCosts& costs);

// Plan, costs, iteration counts, convergence flags and the multiplier
// trajectory.
std::string solve_report_to_json_text(const SolveReport& report);

}  // namespace mro
