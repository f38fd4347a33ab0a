#include "mro/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

#include "mro/energy.hpp"

namespace mro {

namespace {

inline double up_t(const Instance& inst, int from, int to, int k, const EvalOptions& o) {
    return uplink_transfer_time(inst.graph.bits(from, to), inst.radios[k], o);
}

inline double down_t(const Instance& inst, int from, int to, int k, const EvalOptions& o) {
    return downlink_transfer_time(inst.graph.bits(from, to), inst.radios[k], o);
}

void check_mult(const Instance& inst, const Multipliers& mult) {
    if (mult.zeta.size() != static_cast<std::size_t>(inst.k()) ||
        mult.phi.size() != static_cast<std::size_t>(inst.m()))
        throw std::invalid_argument("multiplier dimensions do not match instance");
}

}  // namespace

double lagrangian_value(const Instance& inst, const OffloadPlan& plan,
                        const Multipliers& mult, const EvalOptions& opts) {
    check_mult(inst, mult);
    const int m = inst.m();
    const int K = inst.k();
    const PlanCosts costs = plan_costs(inst, plan, opts);

    double value = costs.energy + mult.kappa * (costs.time - inst.t_req);

    for (int k = 0; k < K; ++k) {
        double term = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (j == i || !inst.graph.edge(i, j)) continue;
                term += (1.0 - plan.placement[i]) * plan.placement[j] *
                            plan.split[static_cast<std::size_t>(i) * K + k] *
                            inst.radios[k].demand_rate -
                        inst.radios[k].uplink_rate;
            }
        value += mult.zeta[k] * term;
    }

    for (int i = 0; i < m; ++i) {
        double row = 0;
        for (int k = 0; k < K; ++k) row += plan.split[static_cast<std::size_t>(i) * K + k];
        value += mult.phi[i] * (inst.graph.out_degree(i) * row - 1.0);
    }
    return value;
}

double lambda_i(const Instance& inst, const Multipliers& mult, int i) {
    if (i < 0 || i >= inst.m()) throw std::out_of_range("lambda_i: index out of range");
    const double tc = inst.graph.cloud_time[i];
    const double tm = inst.graph.local_time[i];
    return inst.device.idle_power * tc - inst.device.active_power[i] * tm +
           mult.kappa * (tc - tm);
}

std::pair<double, double> gammas(const Instance& inst, const OffloadPlan& plan,
                                 const Multipliers& mult, int i, int j,
                                 const EvalOptions& opts) {
    const int m = inst.m();
    if (i < 0 || i >= m || j < 0 || j >= m) throw std::out_of_range("gammas: index out of range");
    check_mult(inst, mult);

    const int K = inst.k();
    const bool out = inst.graph.edge(i, j);
    const bool in = inst.graph.edge(j, i);
    double cloud_side = 0;
    double device_side = 0;
    for (int k = 0; k < K; ++k) {
        const RadioInterface& radio = inst.radios[k];
        const double nu_i = plan.split[static_cast<std::size_t>(i) * K + k];
        const double nu_j = plan.split[static_cast<std::size_t>(j) * K + k];
        const double gamma_i = plan.receive[static_cast<std::size_t>(i) * K + k];
        const double gamma_j = plan.receive[static_cast<std::size_t>(j) * K + k];
        if (in) cloud_side += nu_j * up_t(inst, j, i, k, opts);
        if (out) cloud_side += gamma_j * down_t(inst, i, j, k, opts);
        if (out)
            device_side += nu_i * ((radio.tx_power + mult.kappa) * up_t(inst, i, j, k, opts) +
                                   mult.zeta[k] * radio.demand_rate);
        if (in)
            device_side += gamma_i * (radio.rx_power + mult.kappa) * down_t(inst, j, i, k, opts);
    }
    cloud_side *= inst.device.idle_power + mult.kappa;
    return {cloud_side, device_side};
}

double delta_i(const Instance& inst, const OffloadPlan& plan, const Multipliers& mult,
               int i, const EvalOptions& opts) {
    const int m = inst.m();
    if (i < 0 || i >= m) throw std::out_of_range("delta_i: index out of range");

    double d = lambda_i(inst, mult, i);
    for (int j = 0; j < m; ++j) {
        if (j == i || (!inst.graph.edge(i, j) && !inst.graph.edge(j, i))) continue;
        // Each cross edge is paid for at both endpoints, so the flip cost
        // combines the kernels of both orientations.
        const auto [cloud_ij, device_ij] = gammas(inst, plan, mult, i, j, opts);
        const auto [cloud_ji, device_ji] = gammas(inst, plan, mult, j, i, opts);
        const double placed_j = plan.placement[j];
        d += (1.0 - placed_j) * (cloud_ij + device_ji) - placed_j * (device_ij + cloud_ji);
    }
    return d;
}

std::vector<double> delta_all(const Instance& inst, const OffloadPlan& plan,
                              const Multipliers& mult, const EvalOptions& opts) {
    std::vector<double> d(inst.m());
    for (int i = 0; i < inst.m(); ++i) d[i] = delta_i(inst, plan, mult, i, opts);
    return d;
}

std::vector<std::uint8_t> initial_placement(const Instance& inst, const Multipliers& mult) {
    std::vector<std::uint8_t> placement(inst.m(), 0);
    for (int i = 0; i < inst.m(); ++i)
        placement[i] = (!inst.pinned(i) && lambda_i(inst, mult, i) < 0.0) ? 1 : 0;
    return placement;
}

double omega(const Instance& inst, const OffloadPlan& plan, const Multipliers& mult,
             int i, int k, const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    if (i < 0 || i >= m || k < 0 || k >= K) throw std::out_of_range("omega: index out of range");
    check_mult(inst, mult);

    const RadioInterface& radio = inst.radios[k];
    double edge_part = 0;
    for (int j = 0; j < m; ++j) {
        if (j == i || !inst.graph.edge(i, j)) continue;
        edge_part += (1.0 - plan.placement[i]) * plan.placement[j] *
                     ((radio.tx_power + mult.kappa) * up_t(inst, i, j, k, opts) +
                      mult.zeta[k] * radio.demand_rate);
    }
    return edge_part + (opts.phi_outside_sum ? mult.phi[i] : m * mult.phi[i]);
}

std::vector<double> nu_star(const Instance& inst, const OffloadPlan& plan,
                            const Multipliers& mult, const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();

    double total = 0;
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < K; ++k) total += omega(inst, plan, mult, i, k, opts);

    std::vector<double> split(static_cast<std::size_t>(m) * K, 0.0);
    for (int i = 0; i < m; ++i) {
        if (plan.placement[i] != 0 || inst.graph.out_degree(i) == 0) continue;
        double row_sum = 0;
        for (int k = 0; k < K; ++k) {
            double raw = (total != 0.0) ? 1.0 - omega(inst, plan, mult, i, k, opts) / total : 1.0;
            if (raw < 0.0) raw = 0.0;  // shares are physical fractions
            split[static_cast<std::size_t>(i) * K + k] = raw;
            row_sum += raw;
        }
        if (row_sum > 1e-12) {
            for (int k = 0; k < K; ++k) split[static_cast<std::size_t>(i) * K + k] /= row_sum;
        } else {
            for (int k = 0; k < K; ++k) split[static_cast<std::size_t>(i) * K + k] = 1.0 / K;
        }
    }
    return split;
}

std::vector<std::uint8_t> update_placement(const Instance& inst, const OffloadPlan& plan,
                                           const Multipliers& mult, const EvalOptions& opts) {
    std::vector<std::uint8_t> placement(inst.m(), 0);
    for (int i = 0; i < inst.m(); ++i)
        placement[i] = (!inst.pinned(i) && delta_i(inst, plan, mult, i, opts) < 0.0) ? 1 : 0;
    return placement;
}

}  // namespace mro
