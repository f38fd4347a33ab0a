#pragma once

namespace mro {

// Model switches shared by the cost, kernel and solver layers.
//
// rtt_model: when true, every one-way transfer time picks up an additive
// rtt/2 latency term. Off by default so the transfer-time formulas stay
// pure d/R.
//
// phi_outside_sum: the per-component allocation multiplier phi_i can be
// applied once per upload edge (default) or once per component.
struct EvalOptions {
    bool rtt_model = false;
    bool phi_outside_sum = false;
};

// Uplink capacity checks use `load <= R * (1 - uplink_margin_factor)`;
// the strict inequality of the flow-rate constraint is not representable
// in floating point.
inline constexpr double uplink_margin_factor = 1e-9;

}  // namespace mro
