#include "mro/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mro/energy.hpp"

namespace mro {

namespace {

std::string at_index(const char* what, int i) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s at component %d", what, i + 1);
    return buf;
}

std::string at_pair(const char* what, int i, int j) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s at edge (%d,%d)", what, i + 1, j + 1);
    return buf;
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

int AppGraph::out_degree(int i) const {
    int deg = 0;
    for (int j = 0; j < m; ++j) deg += edge(i, j) ? 1 : 0;
    return deg;
}

bool Instance::pinned(int i) const {
    return std::binary_search(pinned_local.begin(), pinned_local.end(), i);
}

void validate_instance(const Instance& inst) {
    const AppGraph& g = inst.graph;
    const int m = g.m;
    if (m < 2) throw ValidationError("component count must be at least 2");
    const auto mm = static_cast<std::size_t>(m) * m;
    if (g.alpha.size() != mm || g.data.size() != mm)
        throw ValidationError("dependency/data matrices must be m x m");
    if (g.local_time.size() != static_cast<std::size_t>(m) ||
        g.cloud_time.size() != static_cast<std::size_t>(m))
        throw ValidationError("time vectors must have length m");

    for (int i = 0; i < m; ++i) {
        if (!finite_nonneg(g.local_time[i]))
            throw ValidationError(at_index("local time must be finite and >= 0", i));
        if (!finite_nonneg(g.cloud_time[i]))
            throw ValidationError(at_index("cloud time must be finite and >= 0", i));
        for (int j = 0; j < m; ++j) {
            const auto a = g.alpha[static_cast<std::size_t>(i) * m + j];
            if (a != 0 && a != 1)
                throw ValidationError(at_pair("dependency entries must be 0 or 1", i, j));
            if (!finite_nonneg(g.bits(i, j)))
                throw ValidationError(at_pair("data size must be finite and >= 0", i, j));
            if (i == j && a != 0)
                throw ValidationError(at_index("self-dependency", i));
            if (a != 0 && j < i)
                throw ValidationError(
                    at_pair("dependency must run forward in the execution order", i, j));
            if (a == 0 && g.bits(i, j) != 0.0)
                throw ValidationError(at_pair("data size on a missing edge", i, j));
        }
    }

    if (inst.device.active_power.size() != static_cast<std::size_t>(m))
        throw ValidationError("active power vector must have length m");
    if (!(std::isfinite(inst.device.idle_power) && inst.device.idle_power > 0))
        throw ValidationError("idle power must be finite and > 0");
    for (int i = 0; i < m; ++i)
        if (!(std::isfinite(inst.device.active_power[i]) &&
              inst.device.active_power[i] > inst.device.idle_power))
            throw ValidationError(at_index("active power must exceed idle power", i));

    if (inst.radios.empty()) throw ValidationError("at least one radio interface required");
    for (std::size_t k = 0; k < inst.radios.size(); ++k) {
        const RadioInterface& r = inst.radios[k];
        auto positive = [](double x) { return std::isfinite(x) && x > 0; };
        if (!positive(r.uplink_rate) || !positive(r.downlink_rate))
            throw ValidationError("radio " + std::to_string(k) + ": rates must be > 0");
        if (!positive(r.tx_power) || !positive(r.rx_power))
            throw ValidationError("radio " + std::to_string(k) + ": powers must be > 0");
        if (!positive(r.demand_rate))
            throw ValidationError("radio " + std::to_string(k) + ": demand rate must be > 0");
        if (!finite_nonneg(r.rtt))
            throw ValidationError("radio " + std::to_string(k) + ": rtt must be >= 0");
    }

    if (!(std::isfinite(inst.t_req) && inst.t_req > 0))
        throw ValidationError("time budget must be finite and > 0");

    if (!std::is_sorted(inst.pinned_local.begin(), inst.pinned_local.end()))
        throw ValidationError("pinned component list must be sorted");
    for (std::size_t a = 1; a < inst.pinned_local.size(); ++a)
        if (inst.pinned_local[a] == inst.pinned_local[a - 1])
            throw ValidationError("duplicate pinned component");
    for (int i : inst.pinned_local)
        if (i < 0 || i >= m)
            throw ValidationError("pinned component out of range: " + std::to_string(i + 1));
}

std::vector<Violation> validate_plan(const Instance& inst, const OffloadPlan& plan,
                                     const EvalOptions& opts) {
    const int m = inst.m();
    const int K = inst.k();
    const auto mk = static_cast<std::size_t>(m) * K;
    if (plan.placement.size() != static_cast<std::size_t>(m) || plan.split.size() != mk ||
        plan.receive.size() != mk)
        throw std::invalid_argument("plan dimensions do not match instance");

    std::vector<Violation> out;

    for (int i = 0; i < m; ++i) {
        if (plan.placement[i] != 0 && plan.placement[i] != 1)
            out.push_back({"placement_binary", i, "placement entry must be 0 or 1"});
        if (inst.pinned(i) && plan.placement[i] != 0)
            out.push_back({"pinned_local", i, "pinned component scheduled on the cloud"});

        int ones = 0;
        for (int k = 0; k < K; ++k) {
            const auto g = plan.receive[static_cast<std::size_t>(i) * K + k];
            if (g != 0 && g != 1) {
                out.push_back({"receive_binary", i, "receive entry must be 0 or 1"});
                break;
            }
            ones += g;
        }
        if (ones != 1)
            out.push_back({"receive_row", i, "exactly one reception radio required"});

        double row_sum = 0;
        bool in_range = true;
        for (int k = 0; k < K; ++k) {
            const double v = plan.split[static_cast<std::size_t>(i) * K + k];
            if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) in_range = false;
            row_sum += v;
        }
        if (!in_range)
            out.push_back({"split_range", i, "split fraction outside [0,1]"});

        // The split row must cover the whole upload when this component
        // feeds a cloud-side successor.
        bool uploads = false;
        if (plan.placement[i] == 0)
            for (int j = 0; j < m; ++j)
                if (j != i && inst.graph.edge(i, j) && plan.placement[j] == 1) uploads = true;
        if (uploads && std::abs(row_sum - 1.0) > 1e-9)
            out.push_back({"split_sum", i, "active split row must sum to 1"});
    }

    const PlanCosts costs = plan_costs(inst, plan, opts);
    if (costs.time > inst.t_req + 1e-9)
        out.push_back({"deadline", -1,
                       "total time " + std::to_string(costs.time) + " s exceeds budget " +
                           std::to_string(inst.t_req) + " s"});
    for (int k = 0; k < K; ++k) {
        const double cap = inst.radios[k].uplink_rate * (1.0 - uplink_margin_factor);
        if (costs.uplink_load[k] > cap)
            out.push_back({"uplink_capacity", k, "uplink load exceeds service rate"});
    }
    return out;
}

std::vector<std::uint8_t> assign_receive(const Instance& inst, const DownlinkPolicy& policy) {
    const int m = inst.m();
    const int K = inst.k();
    int chosen = 0;
    if (policy.rule == DownlinkRule::Fixed) {
        if (policy.fixed_radio < 0 || policy.fixed_radio >= K)
            throw std::invalid_argument("fixed reception radio out of range");
        chosen = policy.fixed_radio;
    } else {
        for (int k = 1; k < K; ++k)
            if (inst.radios[k].downlink_rate > inst.radios[chosen].downlink_rate) chosen = k;
    }
    std::vector<std::uint8_t> receive(static_cast<std::size_t>(m) * K, 0);
    for (int i = 0; i < m; ++i) receive[static_cast<std::size_t>(i) * K + chosen] = 1;
    return receive;
}

OffloadPlan all_local_plan(const Instance& inst, const DownlinkPolicy& policy) {
    OffloadPlan plan;
    plan.placement.assign(inst.m(), 0);
    plan.split.assign(static_cast<std::size_t>(inst.m()) * inst.k(), 0.0);
    plan.receive = assign_receive(inst, policy);
    return plan;
}

}  // namespace mro
