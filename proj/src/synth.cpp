#include "mro/synth.hpp"

#include <cmath>
#include <random>

namespace mro {

namespace {

void check_ranges(const SynthRanges& r) {
    auto ordered = [](double lo, double hi) { return lo <= hi && lo >= 0; };
    if (!ordered(r.data_min_bits, r.data_max_bits) || !ordered(r.speedup_min, r.speedup_max) ||
        !ordered(r.local_min_s, r.local_max_s) || !ordered(r.up_min_bps, r.up_max_bps) ||
        !ordered(r.down_min_bps, r.down_max_bps) || !ordered(r.tx_min_w, r.tx_max_w) ||
        !ordered(r.rx_min_w, r.rx_max_w))
        throw ValidationError("synthesis ranges must satisfy 0 <= min <= max");
    if (r.speedup_min <= 0) throw ValidationError("cloud speedup must be > 0");
    if (!(r.extra_edge_prob >= 0 && r.extra_edge_prob <= 1))
        throw ValidationError("edge probability must lie in [0,1]");
    if (r.demand_mean_bps <= 0 || r.t_req_factor <= 0)
        throw ValidationError("demand mean and budget factor must be > 0");
}

double draw_demand(std::mt19937_64& rng, double mean_bps) {
    // Offered load in 0.1 Mbps steps, clamped away from zero.
    std::poisson_distribution<int> d(mean_bps / 1e5);
    return std::max(1, d(rng)) * 1e5;
}

RadioInterface wifi_template() {
    return {"wifi", 0.80e6, 1.76e6, 0.3, 0.1, 1.5e6, 0.040};
}

RadioInterface lte_template() {
    return {"lte", 2.96e6, 4.0e6, 0.6, 0.25, 1.5e6, 0.050};
}

}  // namespace

Instance synthesize_instance(int m, int k, std::uint64_t seed, const SynthRanges& ranges) {
    if (m < 2) throw ValidationError("need at least 2 components");
    if (k < 1) throw ValidationError("need at least 1 radio");
    check_ranges(ranges);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> local(ranges.local_min_s, ranges.local_max_s);
    std::uniform_real_distribution<double> bits(ranges.data_min_bits, ranges.data_max_bits);
    std::uniform_real_distribution<double> speedup(ranges.speedup_min, ranges.speedup_max);

    Instance inst;
    inst.graph.m = m;
    inst.graph.alpha.assign(static_cast<std::size_t>(m) * m, 0);
    inst.graph.data.assign(static_cast<std::size_t>(m) * m, 0.0);

    inst.graph.local_time.resize(m);
    inst.graph.cloud_time.resize(m);
    for (int i = 0; i < m; ++i) {
        inst.graph.local_time[i] = local(rng);
        inst.graph.cloud_time[i] = inst.graph.local_time[i] / speedup(rng);
    }

    // Execution chain plus random forward shortcuts.
    for (int i = 0; i + 1 < m; ++i) inst.graph.alpha[static_cast<std::size_t>(i) * m + i + 1] = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j)
            if (unit(rng) < ranges.extra_edge_prob)
                inst.graph.alpha[static_cast<std::size_t>(i) * m + j] = 1;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (inst.graph.edge(i, j))
                inst.graph.data[static_cast<std::size_t>(i) * m + j] = bits(rng);

    inst.device.active_power.assign(m, 0.6449);
    inst.device.active_power[m - 1] = 0.055;
    inst.device.idle_power = 0.022;

    for (int r = 0; r < k; ++r) {
        RadioInterface radio;
        if (r == 0) {
            radio = wifi_template();
        } else if (r == 1) {
            radio = lte_template();
        } else {
            radio.name = "radio" + std::to_string(r);
            radio.uplink_rate =
                ranges.up_min_bps + (ranges.up_max_bps - ranges.up_min_bps) * unit(rng);
            radio.downlink_rate =
                ranges.down_min_bps + (ranges.down_max_bps - ranges.down_min_bps) * unit(rng);
            radio.tx_power = ranges.tx_min_w + (ranges.tx_max_w - ranges.tx_min_w) * unit(rng);
            radio.rx_power = ranges.rx_min_w + (ranges.rx_max_w - ranges.rx_min_w) * unit(rng);
            radio.rtt = 0.050;
        }
        radio.demand_rate = draw_demand(rng, ranges.demand_mean_bps);
        inst.radios.push_back(std::move(radio));
    }

    double total_local = 0;
    for (double t : inst.graph.local_time) total_local += t;
    inst.t_req = ranges.t_req_factor * total_local;

    inst.pinned_local = {0, m - 1};
    inst.synthetic_fields = {"alpha", "data", "local_time", "cloud_time", "demand_rate"};

    validate_instance(inst);
    return inst;
}

Instance resample_instance(const Instance& base, std::uint64_t seed, const SynthRanges& ranges) {
    check_ranges(ranges);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> bits(ranges.data_min_bits, ranges.data_max_bits);
    std::uniform_real_distribution<double> speedup(ranges.speedup_min, ranges.speedup_max);

    Instance inst = base;
    const int m = inst.m();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (inst.graph.edge(i, j))
                inst.graph.data[static_cast<std::size_t>(i) * m + j] = bits(rng);
    for (int i = 0; i < m; ++i)
        inst.graph.cloud_time[i] = inst.graph.local_time[i] / speedup(rng);
    for (RadioInterface& radio : inst.radios)
        radio.demand_rate = draw_demand(rng, ranges.demand_mean_bps);

    validate_instance(inst);
    return inst;
}

}  // namespace mro
