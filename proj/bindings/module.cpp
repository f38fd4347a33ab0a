#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mro/bench.hpp"
#include "mro/energy.hpp"
#include "mro/exact.hpp"
#include "mro/io.hpp"
#include "mro/lagrangian.hpp"
#include "mro/serialize.hpp"
#include "mro/solver.hpp"
#include "mro/synth.hpp"

namespace py = pybind11;
using namespace mro;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Energy-optimal computation offloading over multiple radio links";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<AppGraph>(m, "AppGraph")
        .def(py::init<>())
        .def_readwrite("m", &AppGraph::m)
        .def_readwrite("alpha", &AppGraph::alpha)
        .def_readwrite("data", &AppGraph::data)
        .def_readwrite("local_time", &AppGraph::local_time)
        .def_readwrite("cloud_time", &AppGraph::cloud_time)
        .def("edge", &AppGraph::edge)
        .def("bits", &AppGraph::bits)
        .def("out_degree", &AppGraph::out_degree);

    py::class_<RadioInterface>(m, "RadioInterface")
        .def(py::init<>())
        .def_readwrite("name", &RadioInterface::name)
        .def_readwrite("uplink_rate", &RadioInterface::uplink_rate)
        .def_readwrite("downlink_rate", &RadioInterface::downlink_rate)
        .def_readwrite("tx_power", &RadioInterface::tx_power)
        .def_readwrite("rx_power", &RadioInterface::rx_power)
        .def_readwrite("demand_rate", &RadioInterface::demand_rate)
        .def_readwrite("rtt", &RadioInterface::rtt);

    py::class_<DeviceProfile>(m, "DeviceProfile")
        .def(py::init<>())
        .def_readwrite("active_power", &DeviceProfile::active_power)
        .def_readwrite("idle_power", &DeviceProfile::idle_power);

    py::class_<Instance>(m, "Instance")
        .def(py::init<>())
        .def_readwrite("graph", &Instance::graph)
        .def_readwrite("device", &Instance::device)
        .def_readwrite("radios", &Instance::radios)
        .def_readwrite("t_req", &Instance::t_req)
        .def_readwrite("pinned_local", &Instance::pinned_local)
        .def_readwrite("synthetic_fields", &Instance::synthetic_fields)
        .def_property_readonly("m", &Instance::m)
        .def_property_readonly("k", &Instance::k)
        .def("pinned", &Instance::pinned);

    py::class_<OffloadPlan>(m, "OffloadPlan")
        .def(py::init<>())
        .def_readwrite("placement", &OffloadPlan::placement)
        .def_readwrite("split", &OffloadPlan::split)
        .def_readwrite("receive", &OffloadPlan::receive);

    py::class_<Violation>(m, "Violation")
        .def_readonly("constraint", &Violation::constraint)
        .def_readonly("index", &Violation::index)
        .def_readonly("detail", &Violation::detail)
        .def("__repr__", [](const Violation& v) {
            return "Violation(" + v.constraint + ", index=" + std::to_string(v.index) + ")";
        });

    py::class_<EvalOptions>(m, "EvalOptions")
        .def(py::init<>())
        .def_readwrite("rtt_model", &EvalOptions::rtt_model)
        .def_readwrite("phi_outside_sum", &EvalOptions::phi_outside_sum);

    py::class_<ComponentCosts>(m, "ComponentCosts")
        .def_readonly("e_m", &ComponentCosts::e_m)
        .def_readonly("e_c", &ComponentCosts::e_c)
        .def_readonly("e_com", &ComponentCosts::e_com)
        .def_readonly("t_m", &ComponentCosts::t_m)
        .def_readonly("t_c", &ComponentCosts::t_c)
        .def_readonly("t_com", &ComponentCosts::t_com)
        .def("energy", &ComponentCosts::energy)
        .def("time", &ComponentCosts::time);

    py::class_<PlanCosts>(m, "PlanCosts")
        .def_readonly("per_component", &PlanCosts::per_component)
        .def_readonly("energy", &PlanCosts::energy)
        .def_readonly("time", &PlanCosts::time)
        .def_readonly("uplink_load", &PlanCosts::uplink_load);

    py::class_<Multipliers>(m, "Multipliers")
        .def(py::init<>())
        .def_readwrite("kappa", &Multipliers::kappa)
        .def_readwrite("zeta", &Multipliers::zeta)
        .def_readwrite("phi", &Multipliers::phi);

    py::class_<StepSizes>(m, "StepSizes")
        .def(py::init<>())
        .def_readwrite("eps_kappa", &StepSizes::eps_kappa)
        .def_readwrite("eps_zeta", &StepSizes::eps_zeta)
        .def_readwrite("eps_phi", &StepSizes::eps_phi)
        .def_readwrite("tol_kappa", &StepSizes::tol_kappa)
        .def_readwrite("tol_zeta", &StepSizes::tol_zeta)
        .def_readwrite("tol_phi", &StepSizes::tol_phi);

    py::class_<InitialMultipliers>(m, "InitialMultipliers")
        .def(py::init<>())
        .def_readwrite("kappa", &InitialMultipliers::kappa)
        .def_readwrite("zeta", &InitialMultipliers::zeta)
        .def_readwrite("phi", &InitialMultipliers::phi);

    py::enum_<DownlinkRule>(m, "DownlinkRule")
        .value("fastest_downlink", DownlinkRule::FastestDownlink)
        .value("fixed", DownlinkRule::Fixed);

    py::class_<DownlinkPolicy>(m, "DownlinkPolicy")
        .def(py::init<>())
        .def_readwrite("rule", &DownlinkPolicy::rule)
        .def_readwrite("fixed_radio", &DownlinkPolicy::fixed_radio);

    py::class_<IterativeConfig>(m, "IterativeConfig")
        .def(py::init<>())
        .def_readwrite("steps", &IterativeConfig::steps)
        .def_readwrite("init", &IterativeConfig::init)
        .def_readwrite("max_outer", &IterativeConfig::max_outer)
        .def_readwrite("max_inner", &IterativeConfig::max_inner)
        .def_readwrite("stall_limit", &IterativeConfig::stall_limit)
        .def_readwrite("downlink", &IterativeConfig::downlink)
        .def_readwrite("opts", &IterativeConfig::opts);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("plan", &SolveReport::plan)
        .def_readonly("costs", &SolveReport::costs)
        .def_readonly("outer_iters", &SolveReport::outer_iters)
        .def_readonly("inner_iters_total", &SolveReport::inner_iters_total)
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("feasible", &SolveReport::feasible)
        .def_readonly("multiplier_history", &SolveReport::multiplier_history)
        .def("to_json", [](const SolveReport& r) { return solve_report_to_json_text(r); });

    py::class_<ExactConfig>(m, "ExactConfig")
        .def(py::init<>())
        .def_readwrite("downlink", &ExactConfig::downlink)
        .def_readwrite("opts", &ExactConfig::opts)
        .def_readwrite("log", &ExactConfig::log)
        .def_readwrite("max_free", &ExactConfig::max_free)
        .def_readwrite("threads", &ExactConfig::threads);

    py::class_<PlacementRecord>(m, "PlacementRecord")
        .def_readonly("placement", &PlacementRecord::placement)
        .def_readonly("feasible", &PlacementRecord::feasible)
        .def_readonly("energy", &PlacementRecord::energy)
        .def_readonly("time", &PlacementRecord::time);

    py::class_<ExactResult>(m, "ExactResult")
        .def_readonly("best_plan", &ExactResult::best_plan)
        .def_readonly("best_energy", &ExactResult::best_energy)
        .def_readonly("best_time", &ExactResult::best_time)
        .def_readonly("feasible", &ExactResult::feasible)
        .def_readonly("evaluated", &ExactResult::evaluated)
        .def_readonly("per_placement_log", &ExactResult::per_placement_log);

    py::class_<RemoteBaseline>(m, "RemoteBaseline")
        .def_readonly("plan", &RemoteBaseline::plan)
        .def_readonly("feasible", &RemoteBaseline::feasible);

    py::class_<SynthRanges>(m, "SynthRanges")
        .def(py::init<>())
        .def_readwrite("data_min_bits", &SynthRanges::data_min_bits)
        .def_readwrite("data_max_bits", &SynthRanges::data_max_bits)
        .def_readwrite("speedup_min", &SynthRanges::speedup_min)
        .def_readwrite("speedup_max", &SynthRanges::speedup_max)
        .def_readwrite("local_min_s", &SynthRanges::local_min_s)
        .def_readwrite("local_max_s", &SynthRanges::local_max_s)
        .def_readwrite("extra_edge_prob", &SynthRanges::extra_edge_prob)
        .def_readwrite("demand_mean_bps", &SynthRanges::demand_mean_bps)
        .def_readwrite("t_req_factor", &SynthRanges::t_req_factor);

    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("instance_from_json_text", &instance_from_json_text, py::arg("text"));
    m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));
    m.def("instance_to_json_text", &instance_to_json_text, py::arg("instance"));
    m.def("validate_instance", &validate_instance, py::arg("instance"));
    m.def("synthesize_instance", &synthesize_instance, py::arg("m"), py::arg("k"),
          py::arg("seed"), py::arg("ranges") = SynthRanges{});
    m.def("resample_instance", &resample_instance, py::arg("base"), py::arg("seed"),
          py::arg("ranges") = SynthRanges{});
    m.def("validate_plan", &validate_plan, py::arg("instance"), py::arg("plan"),
          py::arg("opts") = EvalOptions{});
    m.def("assign_receive", &assign_receive, py::arg("instance"),
          py::arg("policy") = DownlinkPolicy{});
    m.def("all_local_plan", &all_local_plan, py::arg("instance"),
          py::arg("policy") = DownlinkPolicy{});

    m.def("uplink_transfer_time", &uplink_transfer_time, py::arg("bits"), py::arg("radio"),
          py::arg("opts") = EvalOptions{});
    m.def("downlink_transfer_time", &downlink_transfer_time, py::arg("bits"), py::arg("radio"),
          py::arg("opts") = EvalOptions{});
    m.def("edge_energy", &edge_energy, py::arg("instance"), py::arg("plan"), py::arg("i"),
          py::arg("j"), py::arg("k"), py::arg("opts") = EvalOptions{});
    m.def("component_costs", &component_costs, py::arg("instance"), py::arg("plan"),
          py::arg("i"), py::arg("opts") = EvalOptions{});
    m.def("plan_costs", &plan_costs, py::arg("instance"), py::arg("plan"),
          py::arg("opts") = EvalOptions{});

    m.def("lagrangian_value", &lagrangian_value, py::arg("instance"), py::arg("plan"),
          py::arg("multipliers"), py::arg("opts") = EvalOptions{});
    m.def("lambda_i", &lambda_i, py::arg("instance"), py::arg("multipliers"), py::arg("i"));
    m.def("gammas", &gammas, py::arg("instance"), py::arg("plan"), py::arg("multipliers"),
          py::arg("i"), py::arg("j"), py::arg("opts") = EvalOptions{});
    m.def("delta_i", &delta_i, py::arg("instance"), py::arg("plan"), py::arg("multipliers"),
          py::arg("i"), py::arg("opts") = EvalOptions{});
    m.def("initial_placement", &initial_placement, py::arg("instance"), py::arg("multipliers"));
    m.def("omega", &omega, py::arg("instance"), py::arg("plan"), py::arg("multipliers"),
          py::arg("i"), py::arg("k"), py::arg("opts") = EvalOptions{});
    m.def("nu_star", &nu_star, py::arg("instance"), py::arg("plan"), py::arg("multipliers"),
          py::arg("opts") = EvalOptions{});
    m.def("update_placement", &update_placement, py::arg("instance"), py::arg("plan"),
          py::arg("multipliers"), py::arg("opts") = EvalOptions{});

    m.def("solve", &solve, py::arg("instance"), py::arg("config") = IterativeConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("exhaustive_solve", &exhaustive_solve, py::arg("instance"),
          py::arg("config") = ExactConfig{}, py::call_guard<py::gil_scoped_release>());
    m.def("baseline_local", &baseline_local, py::arg("instance"),
          py::arg("policy") = DownlinkPolicy{});
    m.def("baseline_remote", &baseline_remote, py::arg("instance"),
          py::arg("policy") = DownlinkPolicy{}, py::arg("opts") = EvalOptions{});
}
