#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mro/options.hpp"

namespace mro {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Component dependency graph with per-edge data sizes and per-component
// processing times. Indices are 0-based. Edges only run forward in the
// fixed execution order (i < j), which makes the graph a DAG consistent
// with that order.
struct AppGraph {
    int m = 0;
    std::vector<std::uint8_t> alpha;  // m*m adjacency, row-major, 0/1
    std::vector<double> data;         // m*m, bits moved along each edge
    std::vector<double> local_time;   // seconds, per component
    std::vector<double> cloud_time;   // seconds, per component

    bool edge(int i, int j) const {
        return alpha[static_cast<std::size_t>(i) * m + j] != 0;
    }
    double bits(int i, int j) const {
        return data[static_cast<std::size_t>(i) * m + j];
    }
    int out_degree(int i) const;
};

struct RadioInterface {
    std::string name;
    double uplink_rate = 0;    // b/s
    double downlink_rate = 0;  // b/s
    double tx_power = 0;       // W
    double rx_power = 0;       // W
    double demand_rate = 0;    // b/s, offered load scaling the splits
    double rtt = 0;            // s, used only when EvalOptions::rtt_model
};

struct DeviceProfile {
    std::vector<double> active_power;  // W, per component
    double idle_power = 0;             // W
};

struct Instance {
    AppGraph graph;
    DeviceProfile device;
    std::vector<RadioInterface> radios;
    double t_req = 0;               // s, total execution time budget
    std::vector<int> pinned_local;  // sorted 0-based ids forced onto the device
    std::vector<std::string> synthetic_fields;  // file fields not measured

    int m() const { return graph.m; }
    int k() const { return static_cast<int>(radios.size()); }
    bool pinned(int i) const;
};

// Per-component placement plus the per-radio traffic split and the
// single-radio downlink assignment.
struct OffloadPlan {
    std::vector<std::uint8_t> placement;  // m, 1 = cloud
    std::vector<double> split;            // m*k row-major, fractions
    std::vector<std::uint8_t> receive;    // m*k row-major, one-hot rows
};

// Throws ValidationError naming the first violated invariant.
void validate_instance(const Instance& inst);

struct Violation {
    std::string constraint;  // e.g. "deadline", "uplink_capacity"
    int index = -1;          // component or radio involved, -1 if global
    std::string detail;
};

// Empty result iff the plan satisfies the plan invariants, the deadline,
// the per-radio flow-rate limits and the per-component split sums.
// Throws std::invalid_argument on dimension mismatch.
std::vector<Violation> validate_plan(const Instance& inst, const OffloadPlan& plan,
                                     const EvalOptions& opts = {});

enum class DownlinkRule { FastestDownlink, Fixed };

struct DownlinkPolicy {
    DownlinkRule rule = DownlinkRule::FastestDownlink;
    int fixed_radio = 0;
};

// One-hot m*k matrix choosing the reception radio per component.
// FastestDownlink picks the highest downlink rate, ties to the lowest index.
std::vector<std::uint8_t> assign_receive(const Instance& inst,
                                         const DownlinkPolicy& policy = {});

// Everything on the device: placement 0, splits 0, receive per policy.
OffloadPlan all_local_plan(const Instance& inst, const DownlinkPolicy& policy = {});

}  // namespace mro
