#include "mro/energy.hpp"

#include <stdexcept>

namespace mro {

double uplink_transfer_time(double bits, const RadioInterface& radio,
                            const EvalOptions& opts) {
    double t = bits / radio.uplink_rate;
    if (opts.rtt_model) t += 0.5 * radio.rtt;
    return t;
}

double downlink_transfer_time(double bits, const RadioInterface& radio,
                              const EvalOptions& opts) {
    double t = bits / radio.downlink_rate;
    if (opts.rtt_model) t += 0.5 * radio.rtt;
    return t;
}

namespace {

// Transfer times keyed on the directed dependency edge being served.
inline double up_t(const Instance& inst, int from, int to, int k, const EvalOptions& o) {
    return uplink_transfer_time(inst.graph.bits(from, to), inst.radios[k], o);
}

inline double down_t(const Instance& inst, int from, int to, int k, const EvalOptions& o) {
    return downlink_transfer_time(inst.graph.bits(from, to), inst.radios[k], o);
}

}  // namespace

std::pair<double, double> edge_energy(const Instance& inst, const OffloadPlan& plan,
                                      int i, int j, int k, const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    if (i < 0 || i >= m || j < 0 || j >= m || k < 0 || k >= K)
        throw std::out_of_range("edge_energy: index out of range");

    const double ii = plan.placement[i];
    const double ij = plan.placement[j];
    const double pid = inst.device.idle_power;
    const RadioInterface& radio = inst.radios[k];
    const double gamma_j = plan.receive[static_cast<std::size_t>(j) * K + k];
    const double gamma_i = plan.receive[static_cast<std::size_t>(i) * K + k];
    const double nu_i = plan.split[static_cast<std::size_t>(i) * K + k];
    const double nu_j = plan.split[static_cast<std::size_t>(j) * K + k];

    const double fwd = ii * (1.0 - ij) * gamma_j * pid * down_t(inst, i, j, k, opts) +
                       (1.0 - ii) * ij * nu_i * radio.tx_power * up_t(inst, i, j, k, opts);
    const double rev = ii * (1.0 - ij) * nu_j * pid * up_t(inst, j, i, k, opts) +
                       (1.0 - ii) * ij * gamma_i * radio.rx_power * down_t(inst, j, i, k, opts);
    return {fwd, rev};
}

ComponentCosts component_costs(const Instance& inst, const OffloadPlan& plan, int i,
                               const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    if (i < 0 || i >= m) throw std::out_of_range("component_costs: index out of range");

    const AppGraph& g = inst.graph;
    const double ii = plan.placement[i];

    ComponentCosts c;
    c.e_m = (1.0 - ii) * inst.device.active_power[i] * g.local_time[i];
    c.e_c = ii * inst.device.idle_power * g.cloud_time[i];
    c.t_m = (1.0 - ii) * g.local_time[i];
    c.t_c = ii * g.cloud_time[i];

    for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const bool out = g.edge(i, j);
        const bool in = g.edge(j, i);
        if (!out && !in) continue;
        const double ij = plan.placement[j];
        for (int k = 0; k < K; ++k) {
            const auto [fwd, rev] = edge_energy(inst, plan, i, j, k, opts);
            if (out) c.e_com += fwd;
            if (in) c.e_com += rev;

            const double nu_i = plan.split[static_cast<std::size_t>(i) * K + k];
            const double nu_j = plan.split[static_cast<std::size_t>(j) * K + k];
            const double gamma_i = plan.receive[static_cast<std::size_t>(i) * K + k];
            const double gamma_j = plan.receive[static_cast<std::size_t>(j) * K + k];
            // A cross-entity edge contributes waiting time at both of its
            // endpoints, so every component counts its own uploads and the
            // transfers of its cross-placed neighbors.
            if (ii != 0.0 && ij == 0.0) {
                if (in) c.t_com += nu_j * up_t(inst, j, i, k, opts);
                if (out) c.t_com += gamma_j * down_t(inst, i, j, k, opts);
            } else if (ii == 0.0 && ij != 0.0) {
                if (out) c.t_com += nu_i * up_t(inst, i, j, k, opts);
                if (in) c.t_com += gamma_i * down_t(inst, j, i, k, opts);
            }
        }
    }
    return c;
}

PlanCosts plan_costs(const Instance& inst, const OffloadPlan& plan, const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    const auto mk = static_cast<std::size_t>(m) * K;
    if (plan.placement.size() != static_cast<std::size_t>(m) || plan.split.size() != mk ||
        plan.receive.size() != mk)
        throw std::invalid_argument("plan dimensions do not match instance");

    PlanCosts costs;
    costs.per_component.reserve(m);
    for (int i = 0; i < m; ++i) {
        costs.per_component.push_back(component_costs(inst, plan, i, opts));
        costs.energy += costs.per_component.back().energy();
        costs.time += costs.per_component.back().time();
    }

    costs.uplink_load.assign(K, 0.0);
    for (int i = 0; i < m; ++i) {
        if (plan.placement[i] != 0) continue;
        for (int j = 0; j < m; ++j) {
            if (j == i || !inst.graph.edge(i, j) || plan.placement[j] == 0) continue;
            for (int k = 0; k < K; ++k)
                costs.uplink_load[k] += plan.split[static_cast<std::size_t>(i) * K + k] *
                                        inst.radios[k].demand_rate;
        }
    }
    return costs;
}

}  // namespace mro
