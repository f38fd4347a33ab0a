#pragma once

#include <utility>
#include <vector>

namespace mro {

// Small dense linear program over box-bounded variables:
//   minimize objective . x + objective_const
//   subject to eq rows (coeffs . x == rhs), ub rows (coeffs . x <= rhs),
//   0 <= x_j <= upper_bound[j].
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    double objective_const = 0;
    std::vector<std::vector<double>> eq_coeffs;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> ub_coeffs;
    std::vector<double> ub_rhs;
    std::vector<double> upper_bound;            // per variable, 1.0 here
    std::vector<std::pair<int, int>> variable_map;  // column -> (component, radio)
    bool trivially_infeasible = false;
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;
    double objective = 0;  // includes objective_const
};

// Two-phase primal simplex with Bland's rule; deterministic and exact at
// the vertex for the small dense programs built here. Throws on an
// unbounded program, which box bounds rule out.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace mro
