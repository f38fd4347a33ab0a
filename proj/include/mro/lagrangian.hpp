#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mro/instance.hpp"
#include "mro/options.hpp"

namespace mro {

// Dual variables of the relaxation: kappa prices the deadline, zeta_k the
// per-radio flow-rate limits, phi_i the per-component split allocations.
struct Multipliers {
    double kappa = 0;
    std::vector<double> zeta;  // length k, >= 0
    std::vector<double> phi;   // length m, unrestricted sign
};

// Subgradient step scales and the relative-change tolerances of the
// convergence test. Steps apply to residuals normalized by their
// constraint bound and decay as 1/sqrt(s).
struct StepSizes {
    double eps_kappa = 0.3;
    double eps_zeta = 1e-5;
    double eps_phi = 0.01;
    double tol_kappa = 1e-3;
    double tol_zeta = 1e-3;
    double tol_phi = 1e-3;
};

// Relaxed objective: energy plus kappa * (time - budget), the zeta-priced
// flow residuals summed per dependency edge, and the phi-priced
// allocation residuals.
double lagrangian_value(const Instance& inst, const OffloadPlan& plan,
                        const Multipliers& mult, const EvalOptions& opts = {});

// Processing trade-off of moving component i to the cloud, independent of
// the split variables.
double lambda_i(const Instance& inst, const Multipliers& mult, int i);

// Per-neighbor transfer kernels (cloud-side, device-side) used by the
// placement coefficient. The first prices transfers that appear when i is
// on the cloud and j on the device; the second when i is on the device
// and j on the cloud.
std::pair<double, double> gammas(const Instance& inst, const OffloadPlan& plan,
                                 const Multipliers& mult, int i, int j,
                                 const EvalOptions& opts = {});

// Exact coefficient of placement[i] in the relaxed objective:
// L(I_i=1) - L(I_i=0) with every other coordinate held fixed. Built from
// the gamma kernels of both edge orientations so the identity holds for
// every state.
double delta_i(const Instance& inst, const OffloadPlan& plan, const Multipliers& mult,
               int i, const EvalOptions& opts = {});

std::vector<double> delta_all(const Instance& inst, const OffloadPlan& plan,
                              const Multipliers& mult, const EvalOptions& opts = {});

// Cloud iff the processing trade-off is negative; pinned components stay
// on the device. Ties (lambda == 0) resolve to the device.
std::vector<std::uint8_t> initial_placement(const Instance& inst, const Multipliers& mult);

// Linear coefficient of split[i][k] in the relaxed objective, as a
// preference weight. phi_i is counted once per summand by default (m
// times); EvalOptions::phi_outside_sum counts it once.
double omega(const Instance& inst, const OffloadPlan& plan, const Multipliers& mult,
             int i, int k, const EvalOptions& opts = {});

// Closed-form split update: rows for cloud-side or edge-less components
// are zero; active rows get 1 - omega/total, clamped at zero and
// normalized to sum to one. A degenerate total falls back to the uniform
// split.
std::vector<double> nu_star(const Instance& inst, const OffloadPlan& plan,
                            const Multipliers& mult, const EvalOptions& opts = {});

// Cloud iff delta_i < 0; pinned components stay on the device.
std::vector<std::uint8_t> update_placement(const Instance& inst, const OffloadPlan& plan,
                                           const Multipliers& mult,
                                           const EvalOptions& opts = {});

}  // namespace mro
