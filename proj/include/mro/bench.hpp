#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mro/instance.hpp"
#include "mro/options.hpp"
#include "mro/synth.hpp"

namespace mro {

enum class Scenario { Local, Remote, Exhaustive, Iterative };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct SweepSpec {
    double min = 0;
    double max = 0;
    int steps = 0;
};

struct RunSpec {
    std::string instance_path;  // mutually exclusive with synth_m/synth_k
    int synth_m = 0;
    int synth_k = 0;
    std::set<Scenario> scenarios = {Scenario::Local, Scenario::Remote, Scenario::Exhaustive,
                                    Scenario::Iterative};
    std::optional<double> t_req;           // override; default: the instance budget
    std::optional<SweepSpec> t_req_sweep;  // takes precedence over t_req
    int rtt_radio = -1;                    // radio swept, -1 = none
    std::optional<SweepSpec> rtt_sweep;
    int repetitions = 100;
    std::uint64_t seed = 0;
    std::string output_path;  // CSV; empty = no file
    EvalOptions opts{};
    SynthRanges ranges{};
    int threads = 0;  // worker pool size, 0 = hardware
    bool quiet = false;
    std::string placement_log_path;  // per-placement CSV of the first exhaustive run
};

struct ResultRow {
    Scenario scenario = Scenario::Local;
    int rep = 0;
    std::uint64_t seed = 0;
    double t_req = 0;
    std::vector<double> rtt;  // per radio, seconds
    double energy_j = 0;
    double normalized_energy = 0;  // relative to the all-local plan
    double time_s = 0;
    bool feasible = false;
    double wifi_share = 0;  // data-weighted upload share of radio 0
    long iterations = 0;
};

struct RunSummary {
    std::vector<ResultRow> rows;
    std::map<Scenario, double> mean_normalized;
    std::optional<double> gap_percent;  // iterative vs exhaustive
};

// One row per (sweep point, repetition, scenario), deterministic in the
// seed. Writes the CSV when an output path is set and prints the summary
// unless quiet.
RunSummary run(const RunSpec& spec);

std::string csv_header(int num_radios);
std::string csv_line(const ResultRow& row);
ResultRow parse_csv_line(const std::string& header, const std::string& line);

}  // namespace mro
