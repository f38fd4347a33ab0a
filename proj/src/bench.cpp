#include "mro/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mro/energy.hpp"
#include "mro/exact.hpp"
#include "mro/io.hpp"
#include "mro/solver.hpp"

namespace mro {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t rep) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (rep + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double data_weighted_share(const Instance& inst, const OffloadPlan& plan, int radio) {
    double carried = 0;
    double total = 0;
    const int m = inst.m();
    const int K = inst.k();
    for (int i = 0; i < m; ++i) {
        if (plan.placement[i]) continue;
        for (int j = 0; j < m; ++j) {
            if (j == i || !inst.graph.edge(i, j) || !plan.placement[j]) continue;
            const double d = inst.graph.bits(i, j);
            total += d;
            carried += d * plan.split[static_cast<std::size_t>(i) * K + radio];
        }
    }
    return total > 0 ? carried / total : 0.0;
}

std::vector<double> sweep_values(const SweepSpec& s) {
    std::vector<double> out;
    if (s.steps <= 1) {
        out.push_back(s.min);
        return out;
    }
    for (int i = 0; i < s.steps; ++i)
        out.push_back(s.min + (s.max - s.min) * i / (s.steps - 1));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_placement_log(const std::string& path, const ExactResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open placement log: " + path);
    out << "placement,feasible,energy_J,time_s\n";
    for (const PlacementRecord& rec : result.per_placement_log) {
        std::string bitstring;
        for (auto b : rec.placement) bitstring += b ? '1' : '0';
        out << bitstring << ',' << (rec.feasible ? 1 : 0) << ',' << fmt(rec.energy) << ','
            << fmt(rec.time) << '\n';
    }
}

}  // namespace

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Local: return "local";
        case Scenario::Remote: return "remote";
        case Scenario::Exhaustive: return "exhaustive";
        case Scenario::Iterative: return "iterative";
    }
    return "?";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "local") return Scenario::Local;
    if (name == "remote") return Scenario::Remote;
    if (name == "exhaustive") return Scenario::Exhaustive;
    if (name == "iterative") return Scenario::Iterative;
    throw std::invalid_argument("unknown scenario: " + name);
}

std::string csv_header(int num_radios) {
    std::string h = "scenario,rep,seed,t_req_s";
    for (int k = 0; k < num_radios; ++k) h += ",rtt" + std::to_string(k) + "_s";
    h += ",energy_J,normalized_energy,time_s,feasible,wifi_share,iterations";
    return h;
}

std::string csv_line(const ResultRow& row) {
    std::ostringstream out;
    out << scenario_name(row.scenario) << ',' << row.rep << ',' << row.seed << ','
        << fmt(row.t_req);
    for (double r : row.rtt) out << ',' << fmt(r);
    out << ',' << fmt(row.energy_j) << ',' << fmt(row.normalized_energy) << ','
        << fmt(row.time_s) << ',' << (row.feasible ? 1 : 0) << ',' << fmt(row.wifi_share) << ','
        << row.iterations;
    return out.str();
}

ResultRow parse_csv_line(const std::string& header, const std::string& line) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
        return parts;
    };
    const auto names = split(header);
    const auto cells = split(line);
    if (names.size() != cells.size())
        throw std::invalid_argument("CSV row does not match header");

    ResultRow row;
    for (std::size_t c = 0; c < names.size(); ++c) {
        const std::string& name = names[c];
        const std::string& cell = cells[c];
        if (name == "scenario") row.scenario = scenario_from_name(cell);
        else if (name == "rep") row.rep = std::stoi(cell);
        else if (name == "seed") row.seed = std::stoull(cell);
        else if (name == "t_req_s") row.t_req = std::stod(cell);
        else if (name.rfind("rtt", 0) == 0) row.rtt.push_back(std::stod(cell));
        else if (name == "energy_J") row.energy_j = std::stod(cell);
        else if (name == "normalized_energy") row.normalized_energy = std::stod(cell);
        else if (name == "time_s") row.time_s = std::stod(cell);
        else if (name == "feasible") row.feasible = cell == "1";
        else if (name == "wifi_share") row.wifi_share = std::stod(cell);
        else if (name == "iterations") row.iterations = std::stol(cell);
        else throw std::invalid_argument("unknown CSV column: " + name);
    }
    return row;
}

RunSummary run(const RunSpec& spec) {
    if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (spec.instance_path.empty() == (spec.synth_m == 0))
        throw std::invalid_argument("specify exactly one of instance path or synthesis size");

    Instance base = spec.instance_path.empty()
                        ? synthesize_instance(spec.synth_m, spec.synth_k, spec.seed, spec.ranges)
                        : load_instance(spec.instance_path);

    std::vector<double> t_points;
    if (spec.t_req_sweep) {
        if (spec.t_req_sweep->steps < 2)
            throw std::invalid_argument("budget sweep needs at least 2 points");
        t_points = sweep_values(*spec.t_req_sweep);
    } else {
        t_points.push_back(spec.t_req.value_or(base.t_req));
    }

    std::vector<double> rtt_points;
    EvalOptions opts = spec.opts;
    if (spec.rtt_sweep) {
        if (spec.rtt_radio < 0 || spec.rtt_radio >= base.k())
            throw std::invalid_argument("rtt sweep radio out of range");
        rtt_points = sweep_values(*spec.rtt_sweep);
        opts.rtt_model = true;  // a latency sweep implies latency modeling
    } else {
        rtt_points.push_back(-1.0);  // sentinel: keep instance values
    }

    struct Task {
        int sweep_index;
        int rep;
        Instance inst;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int ti = 0; ti < static_cast<int>(t_points.size()); ++ti)
        for (int ri = 0; ri < static_cast<int>(rtt_points.size()); ++ri)
            for (int rep = 0; rep < spec.repetitions; ++rep) {
                Task task;
                task.sweep_index = ti * static_cast<int>(rtt_points.size()) + ri;
                task.rep = rep;
                task.seed = spec.repetitions == 1 ? spec.seed : mix_seed(spec.seed, rep);
                task.inst = spec.repetitions == 1 ? base
                                                  : resample_instance(base, task.seed, spec.ranges);
                task.inst.t_req = t_points[ti];
                if (rtt_points[ri] >= 0) task.inst.radios[spec.rtt_radio].rtt = rtt_points[ri];
                tasks.push_back(std::move(task));
            }

    // Scenario order inside a task is fixed by the set ordering.
    const std::vector<Scenario> scenarios(spec.scenarios.begin(), spec.scenarios.end());
    std::vector<std::vector<ResultRow>> row_groups(tasks.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size() || failed.load()) break;
            const Task& task = tasks[idx];
            try {
                const Instance& inst = task.inst;
                const OffloadPlan local = baseline_local(inst);
                const double local_energy = plan_costs(inst, local, opts).energy;

                std::vector<ResultRow>& rows = row_groups[idx];
                for (Scenario sc : scenarios) {
                    ResultRow row;
                    row.scenario = sc;
                    row.rep = task.rep;
                    row.seed = task.seed;
                    row.t_req = inst.t_req;
                    for (const RadioInterface& r : inst.radios) row.rtt.push_back(r.rtt);

                    OffloadPlan plan;
                    switch (sc) {
                        case Scenario::Local: {
                            plan = local;
                            break;
                        }
                        case Scenario::Remote: {
                            plan = baseline_remote(inst, {}, opts).plan;
                            break;
                        }
                        case Scenario::Exhaustive: {
                            ExactConfig cfg;
                            cfg.opts = opts;
                            const ExactResult res = exhaustive_solve(inst, cfg);
                            plan = res.best_plan;
                            row.iterations = res.evaluated;
                            break;
                        }
                        case Scenario::Iterative: {
                            IterativeConfig cfg;
                            cfg.opts = opts;
                            const SolveReport rep = solve(inst, cfg);
                            plan = rep.plan;
                            row.iterations = rep.outer_iters;
                            break;
                        }
                    }
                    const PlanCosts costs = plan_costs(inst, plan, opts);
                    row.energy_j = costs.energy;
                    row.normalized_energy = costs.energy / local_energy;
                    row.time_s = costs.time;
                    row.feasible = validate_plan(inst, plan, opts).empty();
                    row.wifi_share = data_weighted_share(inst, plan, 0);
                    rows.push_back(std::move(row));
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                if (error_message.empty()) error_message = e.what();
            }
        }
    };

    int nthreads = spec.threads > 0 ? spec.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(tasks.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error("run failed: " + error_message);

    RunSummary summary;
    for (auto& group : row_groups)
        for (ResultRow& row : group) summary.rows.push_back(std::move(row));

    std::map<Scenario, std::pair<double, long>> norm_acc;
    std::map<std::pair<int, int>, std::pair<double, double>> gap_pairs;  // (sweep, rep)
    for (const ResultRow& row : summary.rows) {
        auto& acc = norm_acc[row.scenario];
        acc.first += row.normalized_energy;
        acc.second += 1;
    }
    for (auto& [sc, acc] : norm_acc) summary.mean_normalized[sc] = acc.first / acc.second;

    if (spec.scenarios.count(Scenario::Exhaustive) && spec.scenarios.count(Scenario::Iterative)) {
        double gap_sum = 0;
        long gap_n = 0;
        // Pair rows task-wise: within a task the scenario order is fixed.
        for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
            double ex = -1, it = -1;
            for (std::size_t r = 0; r < scenarios.size(); ++r) {
                const ResultRow& row = summary.rows[idx * scenarios.size() + r];
                if (row.scenario == Scenario::Exhaustive) ex = row.energy_j;
                if (row.scenario == Scenario::Iterative) it = row.energy_j;
            }
            if (ex > 0 && it >= 0) {
                gap_sum += (it - ex) / ex;
                ++gap_n;
            }
        }
        if (gap_n > 0) summary.gap_percent = 100.0 * gap_sum / gap_n;
    }

    if (!spec.output_path.empty()) {
        std::ofstream out(spec.output_path);
        if (!out) throw std::runtime_error("cannot open output file: " + spec.output_path);
        out << csv_header(base.k()) << '\n';
        for (const ResultRow& row : summary.rows) out << csv_line(row) << '\n';
    }

    if (!spec.placement_log_path.empty() && spec.scenarios.count(Scenario::Exhaustive)) {
        ExactConfig cfg;
        cfg.opts = opts;
        cfg.log = true;
        write_placement_log(spec.placement_log_path, exhaustive_solve(tasks.front().inst, cfg));
    }

    if (!spec.quiet) {
        std::printf("rows: %zu\n", summary.rows.size());
        for (const auto& [sc, mean] : summary.mean_normalized)
            std::printf("mean normalized energy [%s]: %.4f\n", scenario_name(sc).c_str(), mean);
        if (summary.gap_percent)
            std::printf("iterative vs exhaustive mean energy gap: %.2f%%\n", *summary.gap_percent);
    }
    return summary;
}

}  // namespace mro
