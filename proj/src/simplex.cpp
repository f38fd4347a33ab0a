#include "mro/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mro {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
// Must resolve the 1e-9 relative capacity margin on unit-scaled rows;
// accumulated pivot error stays around 1e-13 at these sizes.
constexpr double kFeasTol = 1e-10;

struct Tableau {
    int rows = 0;
    int cols = 0;  // includes rhs column
    std::vector<double> t;
    std::vector<int> basic;  // basic variable per row

    double& at(int r, int c) { return t[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return t[static_cast<std::size_t>(r) * cols + c]; }

    void pivot(int pr, int pc) {
        const double pv = at(pr, pc);
        for (int c = 0; c < cols; ++c) at(pr, c) /= pv;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basic[pr] = pc;
    }
};

// Bland: entering column is the lowest admissible index with a negative
// reduced cost; the leaving row breaks ratio ties by lowest basic index.
bool bland_step(Tableau& tab, const std::vector<double>& z, int num_allowed) {
    int entering = -1;
    for (int c = 0; c < num_allowed; ++c) {
        if (z[c] < -kCostTol) {
            entering = c;
            break;
        }
    }
    if (entering < 0) return false;

    int leaving = -1;
    double best_ratio = 0;
    for (int r = 0; r < tab.rows; ++r) {
        const double a = tab.at(r, entering);
        if (a <= kPivotTol) continue;
        const double ratio = tab.at(r, tab.cols - 1) / a;
        if (leaving < 0 || ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && tab.basic[r] < tab.basic[leaving])) {
            leaving = r;
            best_ratio = ratio;
        }
    }
    if (leaving < 0) throw std::logic_error("unbounded linear program");
    tab.pivot(leaving, entering);
    return true;
}

// Reduced costs for the cost vector `cost` (indexed over all columns but
// the rhs) under the current basis.
std::vector<double> reduced_costs(const Tableau& tab, const std::vector<double>& cost) {
    std::vector<double> z = cost;
    for (int r = 0; r < tab.rows; ++r) {
        const double cb = cost[tab.basic[r]];
        if (cb == 0.0) continue;
        for (int c = 0; c + 1 < tab.cols; ++c) z[c] -= cb * tab.at(r, c);
    }
    return z;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    LpSolution sol;
    if (lp.trivially_infeasible) return sol;

    const int n = lp.num_vars;
    if (n == 0) {
        for (double b : lp.eq_rhs)
            if (std::abs(b) > kFeasTol) return sol;
        for (double b : lp.ub_rhs)
            if (b < -kFeasTol) return sol;
        sol.status = LpStatus::Optimal;
        sol.objective = lp.objective_const;
        return sol;
    }

    // Assemble rows: equalities, inequalities, then the variable upper
    // bounds as plain <= rows. Each row is scaled to unit magnitude.
    struct Row {
        std::vector<double> a;
        double b = 0;
        bool is_eq = false;
    };
    std::vector<Row> rows;
    for (std::size_t r = 0; r < lp.eq_coeffs.size(); ++r)
        rows.push_back({lp.eq_coeffs[r], lp.eq_rhs[r], true});
    for (std::size_t r = 0; r < lp.ub_coeffs.size(); ++r)
        rows.push_back({lp.ub_coeffs[r], lp.ub_rhs[r], false});
    for (int j = 0; j < n; ++j) {
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        rows.push_back({std::move(a), lp.upper_bound[j], false});
    }
    for (Row& row : rows) {
        double mag = std::abs(row.b);
        for (double v : row.a) mag = std::max(mag, std::abs(v));
        if (mag > 0) {
            for (double& v : row.a) v /= mag;
            row.b /= mag;
        }
    }

    const int m_rows = static_cast<int>(rows.size());
    // Column layout: structural, one slack/surplus per inequality-shaped
    // row, one artificial per row that needs it.
    int num_slack = 0;
    int num_art = 0;
    for (const Row& row : rows) {
        const bool neg = row.b < 0;
        if (!row.is_eq) ++num_slack;
        if (row.is_eq || neg) ++num_art;
    }
    const int num_allowed = n + num_slack;
    const int total_cols = num_allowed + num_art + 1;

    Tableau tab;
    tab.rows = m_rows;
    tab.cols = total_cols;
    tab.t.assign(static_cast<std::size_t>(m_rows) * total_cols, 0.0);
    tab.basic.assign(m_rows, -1);

    std::vector<double> phase1_cost(total_cols - 1, 0.0);
    int slack_col = n;
    int art_col = num_allowed;
    for (int r = 0; r < m_rows; ++r) {
        Row row = rows[r];
        const bool neg = row.b < 0;
        if (neg) {
            for (double& v : row.a) v = -v;
            row.b = -row.b;
        }
        for (int j = 0; j < n; ++j) tab.at(r, j) = row.a[j];
        tab.at(r, total_cols - 1) = row.b;
        if (!row.is_eq) {
            tab.at(r, slack_col) = neg ? -1.0 : 1.0;
            if (!neg) tab.basic[r] = slack_col;
            ++slack_col;
        }
        if (row.is_eq || neg) {
            tab.at(r, art_col) = 1.0;
            tab.basic[r] = art_col;
            phase1_cost[art_col] = 1.0;
            ++art_col;
        }
    }

    const int iter_cap = 50 * (m_rows + total_cols);

    // Phase 1: drive the artificials to zero.
    if (num_art > 0) {
        int iters = 0;
        while (true) {
            auto z = reduced_costs(tab, phase1_cost);
            if (!bland_step(tab, z, num_allowed)) break;
            if (++iters > iter_cap) throw std::runtime_error("simplex: phase 1 stalled");
        }
        double infeas = 0;
        for (int r = 0; r < m_rows; ++r)
            if (tab.basic[r] >= num_allowed) infeas += tab.at(r, total_cols - 1);
        if (infeas > kFeasTol) return sol;

        // Pivot leftover degenerate artificials out where possible.
        for (int r = 0; r < m_rows; ++r) {
            if (tab.basic[r] < num_allowed) continue;
            for (int c = 0; c < num_allowed; ++c) {
                if (std::abs(tab.at(r, c)) > kPivotTol) {
                    tab.pivot(r, c);
                    break;
                }
            }
        }
    }

    // Phase 2 on the real objective.
    std::vector<double> cost(total_cols - 1, 0.0);
    for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
    {
        int iters = 0;
        while (true) {
            auto z = reduced_costs(tab, cost);
            if (!bland_step(tab, z, num_allowed)) break;
            if (++iters > iter_cap) throw std::runtime_error("simplex: phase 2 stalled");
        }
    }

    sol.values.assign(n, 0.0);
    for (int r = 0; r < m_rows; ++r)
        if (tab.basic[r] < n) sol.values[tab.basic[r]] = tab.at(r, total_cols - 1);
    for (int j = 0; j < n; ++j)
        sol.values[j] = std::clamp(sol.values[j], 0.0, lp.upper_bound[j]);

    sol.status = LpStatus::Optimal;
    sol.objective = lp.objective_const;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.values[j];
    return sol;
}

}  // namespace mro
