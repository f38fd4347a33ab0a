#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mro/simplex.hpp"

using namespace mro;

namespace {

LinearProgram two_var(std::vector<double> c) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = std::move(c);
    lp.upper_bound = {1.0, 1.0};
    lp.eq_coeffs = {{1.0, 1.0}};
    lp.eq_rhs = {1.0};
    return lp;
}

}  // namespace

TEST_CASE("dominated column stays out of the basis") {
    const LpSolution s = solve_lp(two_var({1.0, 2.0}));
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.values[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric costs resolve to the lowest-index vertex") {
    const LpSolution s = solve_lp(two_var({0.7, 0.7}));
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.values[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("binding inequality moves the split") {
    LinearProgram lp = two_var({1.0, 2.0});
    lp.ub_coeffs = {{1.0, 0.0}};
    lp.ub_rhs = {0.4};  // cheap variable capped
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.values[0] == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(s.values[1] == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(s.objective == doctest::Approx(1.6).epsilon(1e-9));
}

TEST_CASE("infeasible programs are reported, not solved") {
    SUBCASE("capacity below the allocation requirement") {
        LinearProgram lp = two_var({1.0, 1.0});
        lp.ub_coeffs = {{1.0, 0.0}, {0.0, 1.0}};
        lp.ub_rhs = {0.3, 0.4};  // x1+x2 <= 0.7 < 1
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }
    SUBCASE("negative bound flag") {
        LinearProgram lp = two_var({1.0, 1.0});
        lp.trivially_infeasible = true;
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }
    SUBCASE("zero-variable program checks its own constants") {
        LinearProgram lp;
        lp.objective_const = 3.5;
        CHECK(solve_lp(lp).status == LpStatus::Optimal);
        CHECK(solve_lp(lp).objective == 3.5);
        lp.ub_rhs = {-1.0};
        lp.ub_coeffs = {{}};
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }
}

TEST_CASE("mixed-scale rows stay numerically exact") {
    // Rates in b/s against fractions in [0,1]: the row magnitudes differ
    // by six orders.
    LinearProgram lp = two_var({0.9, 0.47});
    lp.ub_coeffs = {{3.0e6, 0.0}, {0.0, 3.0e6}};
    lp.ub_rhs = {0.8e6, 2.96e6};
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.values[1] == doctest::Approx(2.96 / 3.0).epsilon(1e-9));
    CHECK(s.values[0] == doctest::Approx(1.0 - 2.96 / 3.0).epsilon(1e-9));
}

TEST_CASE("random programs agree with a dense grid search") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> cost(0.05, 1.0);
    std::uniform_real_distribution<double> cap(0.3, 2.0);

    for (int it = 0; it < 300; ++it) {
        // One simplex row over two variables plus two random capacities.
        LinearProgram lp = two_var({cost(rng), cost(rng)});
        lp.ub_coeffs = {{cap(rng), 0.0}, {0.0, cap(rng)}};
        lp.ub_rhs = {cap(rng), cap(rng)};
        const LpSolution s = solve_lp(lp);

        double best = -1;
        for (int g = 0; g <= 1000; ++g) {
            const double x0 = g / 1000.0;
            const double x1 = 1.0 - x0;
            if (lp.ub_coeffs[0][0] * x0 > lp.ub_rhs[0]) continue;
            if (lp.ub_coeffs[1][1] * x1 > lp.ub_rhs[1]) continue;
            const double obj = lp.objective[0] * x0 + lp.objective[1] * x1;
            if (best < 0 || obj < best) best = obj;
        }
        if (s.status == LpStatus::Optimal) {
            if (best >= 0) {
                CHECK(s.objective <= best + 1e-9);      // grid points are feasible
                CHECK(std::abs(s.objective - best) <= 2e-3);
            }
        } else {
            CHECK(best < 0);
        }
    }
}
