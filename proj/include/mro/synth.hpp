#pragma once

#include <cstdint>

#include "mro/instance.hpp"

namespace mro {

// Random-instance generation for benchmarking. The device profile and the
// first two radios reuse the bundled measurement values; anything the
// measurements do not pin down is drawn from these ranges.
struct SynthRanges {
    // Data sizes large enough that transfer energy competes with the
    // processing energy it displaces; with small payloads every instance
    // degenerates to full offload.
    double data_min_bits = 1e5;  // 0.1 Mbit
    double data_max_bits = 2e6;  // 2 Mbit
    double speedup_min = 5.0;     // cloud_time = local_time / speedup
    double speedup_max = 5.0;
    double local_min_s = 0.03;
    double local_max_s = 0.9;
    double extra_edge_prob = 0.25;   // forward edges beyond the chain
    double demand_mean_bps = 1.5e6;  // Poisson mean, 0.1 Mbps granularity
    double t_req_factor = 1.0;       // budget = factor * total local time
    // Radios past the first two:
    double up_min_bps = 5e5;
    double up_max_bps = 3e6;
    double down_min_bps = 1e6;
    double down_max_bps = 5e6;
    double tx_min_w = 0.2;
    double tx_max_w = 0.7;
    double rx_min_w = 0.08;
    double rx_max_w = 0.3;
};

// Deterministic in (m, k, seed, ranges): a chain plus random forward
// edges, first and last components pinned to the device.
Instance synthesize_instance(int m, int k, std::uint64_t seed, const SynthRanges& ranges = {});

// Redraws the unmeasured quantities of an existing instance: data sizes
// on its edges, cloud times, and demand rates. Structure, times, powers,
// rates and the budget stay fixed.
Instance resample_instance(const Instance& base, std::uint64_t seed,
                           const SynthRanges& ranges = {});

}  // namespace mro
