#pragma once

#include <utility>
#include <vector>

#include "mro/instance.hpp"
#include "mro/options.hpp"

namespace mro {

// Energy (J) and time (s) of one component, separated into processing on
// the device, processing in the cloud, and data transfer. Exactly one of
// e_m / e_c can be nonzero since placement is binary.
struct ComponentCosts {
    double e_m = 0;
    double e_c = 0;
    double e_com = 0;
    double t_m = 0;
    double t_c = 0;
    double t_com = 0;

    double energy() const { return e_m + e_c + e_com; }
    double time() const { return t_m + t_c + t_com; }
};

struct PlanCosts {
    std::vector<ComponentCosts> per_component;
    double energy = 0;                // objective value
    double time = 0;                  // deadline constraint LHS
    std::vector<double> uplink_load;  // b/s per radio, flow constraint LHS
};

// d / uplink_rate, plus rtt/2 when RTT modeling is enabled.
double uplink_transfer_time(double bits, const RadioInterface& radio,
                            const EvalOptions& opts = {});

// d / downlink_rate, plus rtt/2 when RTT modeling is enabled.
double downlink_transfer_time(double bits, const RadioInterface& radio,
                              const EvalOptions& opts = {});

// Transfer energies of the directed edges (i,j) and (j,i) on radio k, as a
// pair. The first element charges the i->j edge: idle power while data
// comes down to a device-side j, transmit power while a device-side i
// uploads. The second charges the j->i edge with the mirrored indicator
// pattern (idle power on the upload, receive power on the download).
// Both are zero when i and j are co-located. Callers gate by the
// dependency matrix.
std::pair<double, double> edge_energy(const Instance& inst, const OffloadPlan& plan,
                                      int i, int j, int k, const EvalOptions& opts = {});

ComponentCosts component_costs(const Instance& inst, const OffloadPlan& plan, int i,
                               const EvalOptions& opts = {});

PlanCosts plan_costs(const Instance& inst, const OffloadPlan& plan,
                     const EvalOptions& opts = {});

}  // namespace mro
