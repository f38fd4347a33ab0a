// mroplan: scenario runs, budget sweeps and latency sweeps for the
// multi-radio offload planner, emitting one CSV row per result.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mro/bench.hpp"

namespace {

mro::SweepSpec parse_sweep(const std::string& text, const char* what) {
    mro::SweepSpec sweep;
    int radio_unused = 0;
    (void)radio_unused;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &sweep.min, &sweep.max, &sweep.steps) != 3 ||
        sweep.steps < 1 || sweep.min > sweep.max)
        throw CLI::ValidationError(std::string(what) + " expects MIN:MAX:STEPS");
    return sweep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-optimal computation offloading over multiple radio links"};

    mro::RunSpec spec;
    spec.repetitions = 100;

    std::string synth;
    std::string scenario_list;
    std::string t_req_sweep;
    std::string rtt_sweep;
    std::string rtt_model = "off";
    double t_req = -1;

    auto* instance_opt = app.add_option("--instance", spec.instance_path, "Instance JSON file");
    app.add_option("--synth", synth, "Synthesize an instance, format M,K")
        ->excludes(instance_opt);
    app.add_option("--scenarios", scenario_list,
                   "Comma list of local,remote,exhaustive,iterative (default all)");
    app.add_option("--t-req", t_req, "Execution time budget in seconds");
    app.add_option("--t-req-sweep", t_req_sweep, "Budget sweep MIN:MAX:STEPS (seconds)");
    app.add_option("--rtt-sweep", rtt_sweep,
                   "Round-trip-time sweep RADIO:MIN:MAX:STEPS (seconds); implies --rtt-model on");
    app.add_option("--reps", spec.repetitions, "Repetitions per sweep point (default 100)");
    app.add_option("--seed", spec.seed, "Base random seed");
    app.add_option("--out", spec.output_path, "Output CSV path");
    app.add_flag("--phi-outside-sum", spec.opts.phi_outside_sum,
                 "Apply the allocation multiplier once per component instead of per edge");
    app.add_option("--rtt-model", rtt_model, "Latency modeling on|off (default off)");
    app.add_option("--threads", spec.threads, "Worker threads (default: hardware)");
    app.add_option("--placement-log", spec.placement_log_path,
                   "Per-placement CSV of the first exhaustive run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!synth.empty()) {
            if (std::sscanf(synth.c_str(), "%d,%d", &spec.synth_m, &spec.synth_k) != 2)
                throw std::invalid_argument("--synth expects M,K");
        }
        if (!scenario_list.empty()) {
            spec.scenarios.clear();
            std::string cur;
            for (char c : scenario_list + ",") {
                if (c == ',') {
                    if (!cur.empty()) spec.scenarios.insert(mro::scenario_from_name(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        }
        if (t_req > 0) spec.t_req = t_req;
        if (!t_req_sweep.empty()) spec.t_req_sweep = parse_sweep(t_req_sweep, "--t-req-sweep");
        if (!rtt_sweep.empty()) {
            const auto colon = rtt_sweep.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("--rtt-sweep expects RADIO:MIN:MAX:STEPS");
            spec.rtt_radio = std::stoi(rtt_sweep.substr(0, colon));
            spec.rtt_sweep = parse_sweep(rtt_sweep.substr(colon + 1), "--rtt-sweep");
        }
        if (rtt_model == "on") spec.opts.rtt_model = true;
        else if (rtt_model != "off")
            throw std::invalid_argument("--rtt-model expects on or off");

        mro::run(spec);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
