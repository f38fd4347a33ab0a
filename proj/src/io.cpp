#include "mro/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mro {

namespace {

using nlohmann::json;

double unit_factor(const std::string& kind, const std::string& unit) {
    if (kind == "time") {
        if (unit == "s") return 1.0;
        if (unit == "ms") return 1e-3;
    } else if (kind == "power") {
        if (unit == "W") return 1.0;
        if (unit == "mW") return 1e-3;
    } else if (kind == "data") {
        if (unit == "bit") return 1.0;
        if (unit == "kbit") return 1e3;
        if (unit == "Mbit") return 1e6;
    } else if (kind == "rate") {
        if (unit == "bps") return 1.0;
        if (unit == "kbps") return 1e3;
        if (unit == "Mbps") return 1e6;
    }
    throw ParseError("unknown " + kind + " unit '" + unit + "'");
}

struct Units {
    double time = 1.0;
    double power = 1.0;
    double data = 1.0;
    double rate = 1.0;
};

Units read_units(const json& root) {
    Units u;
    if (!root.contains("units")) return u;
    const json& units = root.at("units");
    if (units.contains("time")) u.time = unit_factor("time", units.at("time"));
    if (units.contains("power")) u.power = unit_factor("power", units.at("power"));
    if (units.contains("data")) u.data = unit_factor("data", units.at("data"));
    if (units.contains("rate")) u.rate = unit_factor("rate", units.at("rate"));
    return u;
}

std::vector<double> scaled_vector(const json& arr, double factor) {
    std::vector<double> out;
    out.reserve(arr.size());
    for (const json& v : arr) out.push_back(v.get<double>() * factor);
    return out;
}

}  // namespace

Instance instance_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }

    Instance inst;
    try {
        const Units u = read_units(root);
        const json& graph = root.at("graph");
        inst.graph.m = graph.at("m").get<int>();
        const int m = inst.graph.m;
        if (m <= 0) throw ParseError("graph.m must be positive");

        const json& alpha = graph.at("alpha");
        const json& data = graph.at("data");
        if (alpha.size() != static_cast<std::size_t>(m) ||
            data.size() != static_cast<std::size_t>(m))
            throw ParseError("alpha/data must have m rows");
        inst.graph.alpha.reserve(static_cast<std::size_t>(m) * m);
        inst.graph.data.reserve(static_cast<std::size_t>(m) * m);
        for (int i = 0; i < m; ++i) {
            if (alpha[i].size() != static_cast<std::size_t>(m) ||
                data[i].size() != static_cast<std::size_t>(m))
                throw ParseError("alpha/data must have m columns");
            for (int j = 0; j < m; ++j) {
                inst.graph.alpha.push_back(alpha[i][j].get<int>() ? 1 : 0);
                inst.graph.data.push_back(data[i][j].get<double>() * u.data);
            }
        }
        inst.graph.local_time = scaled_vector(graph.at("local_time"), u.time);
        inst.graph.cloud_time = scaled_vector(graph.at("cloud_time"), u.time);

        const json& device = root.at("device");
        inst.device.active_power = scaled_vector(device.at("active_power"), u.power);
        inst.device.idle_power = device.at("idle_power").get<double>() * u.power;

        for (const json& r : root.at("radios")) {
            RadioInterface radio;
            radio.name = r.value("name", "");
            radio.uplink_rate = r.at("uplink_rate").get<double>() * u.rate;
            radio.downlink_rate = r.at("downlink_rate").get<double>() * u.rate;
            radio.tx_power = r.at("tx_power").get<double>() * u.power;
            radio.rx_power = r.at("rx_power").get<double>() * u.power;
            radio.demand_rate = r.at("demand_rate").get<double>() * u.rate;
            radio.rtt = r.value("rtt", 0.0) * u.time;
            inst.radios.push_back(std::move(radio));
        }

        inst.t_req = root.at("t_req").get<double>() * u.time;

        if (root.contains("pinned_local")) {
            for (const json& v : root.at("pinned_local"))
                inst.pinned_local.push_back(v.get<int>() - 1);  // file uses 1-based ids
        } else {
            inst.pinned_local = {0, m - 1};
        }
        std::sort(inst.pinned_local.begin(), inst.pinned_local.end());

        if (root.contains("synthetic_fields"))
            for (const json& v : root.at("synthetic_fields"))
                inst.synthetic_fields.push_back(v.get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance schema error: ") + e.what());
    }

    validate_instance(inst);
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json_text(buf.str());
}

std::string instance_to_json_text(const Instance& inst) {
    const int m = inst.m();
    json root;
    root["units"] = {{"time", "s"}, {"power", "W"}, {"data", "bit"}, {"rate", "bps"}};

    json alpha = json::array();
    json data = json::array();
    for (int i = 0; i < m; ++i) {
        json arow = json::array();
        json drow = json::array();
        for (int j = 0; j < m; ++j) {
            arow.push_back(static_cast<int>(inst.graph.alpha[static_cast<std::size_t>(i) * m + j]));
            drow.push_back(inst.graph.bits(i, j));
        }
        alpha.push_back(std::move(arow));
        data.push_back(std::move(drow));
    }
    root["graph"] = {{"m", m},
                     {"alpha", std::move(alpha)},
                     {"data", std::move(data)},
                     {"local_time", inst.graph.local_time},
                     {"cloud_time", inst.graph.cloud_time}};
    root["device"] = {{"active_power", inst.device.active_power},
                      {"idle_power", inst.device.idle_power}};

    json radios = json::array();
    for (const RadioInterface& r : inst.radios) {
        json jr = {{"uplink_rate", r.uplink_rate},   {"downlink_rate", r.downlink_rate},
                   {"tx_power", r.tx_power},         {"rx_power", r.rx_power},
                   {"demand_rate", r.demand_rate},   {"rtt", r.rtt}};
        if (!r.name.empty()) jr["name"] = r.name;
        radios.push_back(std::move(jr));
    }
    root["radios"] = std::move(radios);
    root["t_req"] = inst.t_req;

    json pinned = json::array();
    for (int i : inst.pinned_local) pinned.push_back(i + 1);
    root["pinned_local"] = std::move(pinned);
    if (!inst.synthetic_fields.empty()) root["synthetic_fields"] = inst.synthetic_fields;

    return root.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << instance_to_json_text(inst);
}

}  // namespace mro
