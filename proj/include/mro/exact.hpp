#pragma once

#include <cstdint>
#include <vector>

#include "mro/instance.hpp"
#include "mro/options.hpp"
#include "mro/simplex.hpp"

namespace mro {

// For a fixed placement and reception assignment, the energy objective is
// linear in the split fractions: one variable per (uploading component,
// radio), an equality row per uploading component, one capacity row per
// radio and one deadline row.
LinearProgram build_lp(const Instance& inst, const std::vector<std::uint8_t>& placement,
                       const std::vector<std::uint8_t>& receive,
                       const EvalOptions& opts = {});

struct PlacementRecord {
    std::vector<std::uint8_t> placement;
    bool feasible = false;
    double energy = 0;
    double time = 0;
};

struct ExactResult {
    OffloadPlan best_plan;
    double best_energy = 0;
    double best_time = 0;
    bool feasible = false;  // false when no placement admits a feasible split
    long evaluated = 0;
    std::vector<PlacementRecord> per_placement_log;  // populated when log=true
};

struct ExactConfig {
    DownlinkPolicy downlink{};
    EvalOptions opts{};
    bool log = false;
    int max_free = 24;  // enumeration guard
    int threads = 1;
};

// Reference solver: enumerates every placement with pinned components on
// the device (Gray-code order), solves the split program exactly for
// each, and keeps the cheapest feasible plan. Ties break to the
// lexicographically smallest placement.
ExactResult exhaustive_solve(const Instance& inst, const ExactConfig& cfg = {});

OffloadPlan baseline_local(const Instance& inst, const DownlinkPolicy& policy = {});

struct RemoteBaseline {
    OffloadPlan plan;
    bool feasible = false;
};

// Everything but the pinned components on the cloud; the splits come from
// the fixed-placement program, or the uniform split when that program is
// infeasible.
RemoteBaseline baseline_remote(const Instance& inst, const DownlinkPolicy& policy = {},
                               const EvalOptions& opts = {});

}  // namespace mro
