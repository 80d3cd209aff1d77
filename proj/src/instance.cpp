#include "pathsched/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pathsched/util.hpp"

namespace pathsched {

using nlohmann::json;

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    const int n = inst.graph.vertex_count();

    if (inst.starts.empty()) out.push_back("instance has no robots");
    std::set<int> seen_starts;
    for (int sv : inst.starts) {
        if (sv < 1 || sv > n)
            out.push_back("start vertex " + std::to_string(sv) + " out of range 1.." + std::to_string(n));
        else if (!seen_starts.insert(sv).second)
            out.push_back("duplicate start vertex " + std::to_string(sv));
    }

    std::set<int> seen_tasks;
    for (const Task& t : inst.tasks) {
        if (t.vertex < 1 || t.vertex > n)
            out.push_back("task vertex " + std::to_string(t.vertex) + " out of range 1.." + std::to_string(n));
        else if (!seen_tasks.insert(t.vertex).second)
            out.push_back("duplicate task vertex " + std::to_string(t.vertex));
        if (t.duration < 1)
            out.push_back("task at vertex " + std::to_string(t.vertex) + " has non-positive duration");
    }

    if (inst.kind == GraphKind::path) {
        if (!inst.graph.is_path_in_order())
            out.push_back("path instance graph is not the path 1-2-...-n");
        if (!std::is_sorted(inst.starts.begin(), inst.starts.end()))
            out.push_back("path instance starts are not sorted ascending");
    }
    if (inst.kind == GraphKind::lattice && inst.rows * inst.cols != n)
        out.push_back("lattice dimensions do not match vertex count");

    return out;
}

Instance parse_instance_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("instance file is not valid JSON: ") + e.what());
    }

    Instance inst;
    try {
        const json& g = j.at("graph");
        if (g.contains("path")) {
            int n = g.at("path").get<int>();
            inst.graph = make_path_graph(n);
            inst.kind = GraphKind::path;
        } else if (g.contains("lattice")) {
            auto dims = g.at("lattice").get<std::vector<int>>();
            if (dims.size() != 2) throw input_error("lattice block wants [rows, cols]");
            inst.graph = make_lattice_graph(dims[0], dims[1]);
            inst.kind = GraphKind::lattice;
            inst.rows = dims[0];
            inst.cols = dims[1];
        } else {
            int n = g.at("n").get<int>();
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : g.at("edges")) {
                auto pair = e.get<std::vector<int>>();
                if (pair.size() != 2) throw input_error("edge wants [u, v]");
                edges.emplace_back(pair[0], pair[1]);
            }
            inst.graph = Graph(n, std::move(edges));
            inst.kind = GraphKind::general;
        }
        inst.starts = j.at("starts").get<std::vector<int>>();
        if (j.contains("tasks"))
            for (const auto& t : j.at("tasks")) {
                auto pair = t.get<std::vector<int>>();
                if (pair.size() != 2) throw input_error("task wants [vertex, duration]");
                inst.tasks.push_back({pair[0], pair[1]});
            }
    } catch (const json::exception& e) {
        throw input_error(std::string("instance schema mismatch: ") + e.what());
    }
    return inst;
}

Instance load_instance_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw file_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_json(buf.str());
}

std::string instance_to_json(const Instance& inst) {
    json g;
    switch (inst.kind) {
        case GraphKind::path: g["path"] = inst.graph.vertex_count(); break;
        case GraphKind::lattice: g["lattice"] = {inst.rows, inst.cols}; break;
        case GraphKind::general: {
            g["n"] = inst.graph.vertex_count();
            json edges = json::array();
            for (auto [u, v] : inst.graph.edges()) edges.push_back({u, v});
            g["edges"] = edges;
            break;
        }
    }
    json tasks = json::array();
    for (const Task& t : inst.tasks) tasks.push_back({t.vertex, t.duration});
    json j;
    j["graph"] = g;
    j["starts"] = inst.starts;
    j["tasks"] = tasks;
    return j.dump(2) + "\n";
}

}  // namespace pathsched
