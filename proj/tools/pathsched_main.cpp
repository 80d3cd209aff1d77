#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pathsched/bench.hpp"
#include "pathsched/connect.hpp"
#include "pathsched/exact.hpp"
#include "pathsched/ilp.hpp"
#include "pathsched/lattice.hpp"
#include "pathsched/partition.hpp"
#include "pathsched/util.hpp"

using nlohmann::json;
using namespace pathsched;

// Exit codes: 0 ok, 2 usage, 3 unreadable input, 4 schema/validation,
// 5 budget exhausted, 6 infeasible / no solution.
namespace exit_code {
constexpr int ok = 0, usage = 2, unreadable = 3, schema = 4, budget = 5, infeasible = 6;
}

namespace {

struct Common {
    std::string input;
    std::string output;
    std::string traces;
    std::string format = "json";
    std::uint64_t seed = 0;
    int jobs = 1;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw file_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw file_error("cannot open output file: " + path);
    out << content;
}

void fail(const std::string& kind, const std::string& detail, int code) {
    json err;
    err["error"]["kind"] = kind;
    err["error"]["detail"] = detail;
    std::cerr << err.dump() << "\n";
    std::exit(code);
}

json metadata(const Common& c, const std::string& input_bytes) {
    json meta;
    meta["tool_version"] = kVersion;
    meta["seed"] = c.seed;
    meta["input_digest"] = fnv1a_hex(input_bytes);
    return meta;
}

std::vector<std::string> meta_lines(const Common& c, const std::string& input_bytes) {
    return {std::string("tool_version=") + kVersion, "seed=" + std::to_string(c.seed),
            "input_digest=" + fnv1a_hex(input_bytes)};
}

Instance load_validated(const std::string& path) {
    Instance inst = load_instance_json(path);
    auto violations = validate_instance(inst);
    if (!violations.empty()) {
        std::string detail;
        for (const auto& v : violations) detail += (detail.empty() ? "" : "; ") + v;
        fail("invalid_instance", detail, exit_code::schema);
    }
    return inst;
}

json assignment_json(const Instance& inst, const std::vector<std::vector<int>>& tasks_by_robot) {
    json arr = json::array();
    for (int r = 0; r < (int)tasks_by_robot.size(); ++r) {
        json entry;
        entry["robot"] = r + 1;
        json tasks = json::array();
        for (int ti : tasks_by_robot[r])
            tasks.push_back({inst.tasks[ti].vertex, inst.tasks[ti].duration});
        entry["tasks"] = tasks;
        arr.push_back(entry);
    }
    return arr;
}

void emit_result(const Common& c, const json& result, const ScheduleSet& schedules,
                 const std::vector<std::string>& meta) {
    if (c.format == "csv") write_out(c.output, traces_to_csv(schedules, meta));
    else write_out(c.output, result.dump(2) + "\n");
    if (!c.traces.empty()) write_out(c.traces, traces_to_csv(schedules, meta));
}

int run_partition(const Common& c) {
    const std::string bytes = slurp(c.input);
    Instance inst = load_validated(c.input);
    PartitionResult res = solve_partition(inst);
    bool collision_free = is_collision_free(res.schedules, inst.graph);

    json out;
    out["dp_value"] = res.dp_value;
    out["executed_makespan"] = res.executed_makespan;
    out["discrepancy"] = res.discrepancy;
    out["assignment"] = assignment_json(inst, res.tasks_by_robot);
    out["validator"] = collision_free ? "collision-free" : "collision";
    out["metadata"] = metadata(c, bytes);
    emit_result(c, out, res.schedules, meta_lines(c, bytes));
    return collision_free ? exit_code::ok : exit_code::schema;
}

int run_exact(const Common& c, std::uint64_t budget_states, int horizon_override) {
    const std::string bytes = slurp(c.input);
    Instance inst = load_validated(c.input);
    Horizon tau = horizon_override > 0 ? Horizon{horizon_override} : horizon_bound(inst);
    ExactResult res = optimal_makespan(inst, tau, {budget_states, c.jobs});
    if (res.status == ExactStatus::budget_exceeded)
        fail("resource_budget", "state cap exceeded after " +
                                    std::to_string(res.states_expanded) + " expansions",
             exit_code::budget);
    if (res.status == ExactStatus::infeasible_within_horizon)
        fail("infeasible", "no task-completing schedule within tau=" + std::to_string(tau.tau),
             exit_code::infeasible);

    json out;
    out["makespan"] = res.makespan;
    out["states_expanded"] = res.states_expanded;
    out["peak_frontier"] = res.peak_frontier;
    out["metadata"] = metadata(c, bytes);
    emit_result(c, out, res.witness, meta_lines(c, bytes));
    return exit_code::ok;
}

int run_lattice(const Common& c, const std::string& orientation) {
    const std::string bytes = slurp(c.input);
    Instance inst = load_validated(c.input);
    if (inst.kind != GraphKind::lattice)
        fail("invalid_instance", "lattice solve needs a lattice instance", exit_code::schema);

    LatticeResult res;
    if (orientation == "both") {
        res = solve_lattice_via_partition(inst);
    } else {
        auto o = orientation == "top-left" ? SnakeOrientation::top_left_right_first
                                           : SnakeOrientation::top_right_left_first;
        FlattenedInstance flat =
            flatten_instance(inst, snake_path({inst.rows, inst.cols}, o));
        PartitionResult inner = solve_partition(flat.path_instance);
        // Forced single orientation: reuse the two-orientation pipeline's
        // lifting by re-running it when it agrees, otherwise lift by hand.
        res.orientation = o;
        res.dp_value = inner.dp_value;
        res.executed_makespan = inner.executed_makespan;
        res.discrepancy = inner.discrepancy;
        res.schedules.traces.resize(inst.robot_count());
        res.tasks_by_robot.assign(inst.robot_count(), {});
        for (int pr = 0; pr < (int)flat.robot_order.size(); ++pr) {
            int orig = flat.robot_order[pr];
            for (int p : inner.schedules.traces[pr].positions)
                res.schedules.traces[orig].positions.push_back(flat.snake.order[p - 1]);
            res.tasks_by_robot[orig] = inner.tasks_by_robot[pr];
        }
    }
    bool collision_free = is_collision_free(res.schedules, inst.graph);

    json out;
    out["orientation"] =
        res.orientation == SnakeOrientation::top_left_right_first ? "top-left" : "top-right";
    out["dp_value"] = res.dp_value;
    out["executed_makespan"] = res.executed_makespan;
    out["discrepancy"] = res.discrepancy;
    out["assignment"] = assignment_json(inst, res.tasks_by_robot);
    out["validator"] = collision_free ? "collision-free" : "collision";
    out["metadata"] = metadata(c, bytes);
    emit_result(c, out, res.schedules, meta_lines(c, bytes));
    return collision_free ? exit_code::ok : exit_code::schema;
}

int run_ilp_emit(const Common& c, const std::string& variant) {
    const std::string bytes = slurp(c.input);
    Instance inst = load_validated(c.input);
    IlpModel model = build_model(inst, horizon_bound(inst),
                                 variant == "appendix" ? IlpVariant::appendix
                                                       : IlpVariant::maintext);
    write_out(c.output, emit_lp(model, meta_lines(c, bytes)));
    return exit_code::ok;
}

int run_ilp_check(const Common& c, const std::string& variant, const std::string& solution_path) {
    const std::string bytes = slurp(c.input);
    Instance inst = load_validated(c.input);
    IlpModel model = build_model(inst, horizon_bound(inst),
                                 variant == "appendix" ? IlpVariant::appendix
                                                       : IlpVariant::maintext);
    Assignment a = parse_solution(model, slurp(solution_path));
    CheckReport report = check_assignment(model, a);

    json out;
    out["satisfied"] = report.satisfied;
    json viols = json::object();
    for (const auto& [family, names] : report.violations) viols[family] = names;
    out["violations"] = viols;
    if (report.satisfied) out["makespan"] = decode_makespan(model, a);
    out["metadata"] = metadata(c, bytes);
    write_out(c.output, out.dump(2) + "\n");
    return report.satisfied ? exit_code::ok : exit_code::schema;
}

Graph load_graph_only(const std::string& path) {
    // Connectivity subcommands take the instance dialect but only need the
    // graph block; starts/tasks may be absent.
    json j = json::parse(slurp(path), nullptr, false);
    if (j.is_discarded()) throw input_error("graph file is not valid JSON");
    if (!j.contains("starts")) j["starts"] = {1};
    return parse_instance_json(j.dump()).graph;
}

int run_path_exists(const Common& c, const std::string& terminals_arg, int limit,
                    std::uint64_t budget) {
    const std::string bytes = slurp(c.input);
    Graph graph = load_graph_only(c.input);
    std::vector<int> terminals;
    std::istringstream ts(terminals_arg);
    std::string part;
    while (std::getline(ts, part, ',')) terminals.push_back(std::stoi(part));

    auto path = path_connecting(graph, terminals, limit, budget);
    json out;
    out["exists"] = path.has_value();
    out["path"] = path ? json(*path) : json(nullptr);
    out["metadata"] = metadata(c, bytes);
    write_out(c.output, out.dump(2) + "\n");
    return exit_code::ok;
}

int run_shortest_walk(const Common& c, const std::string& terminals_arg) {
    const std::string bytes = slurp(c.input);
    Graph graph = load_graph_only(c.input);
    std::vector<int> terminals;
    std::istringstream ts(terminals_arg);
    std::string part;
    while (std::getline(ts, part, ',')) terminals.push_back(std::stoi(part));

    WalkResult walk = shortest_walk_connecting(graph, terminals, c.jobs);
    json out;
    out["length"] = walk.length;
    out["walk"] = walk.walk;
    out["metadata"] = metadata(c, bytes);
    write_out(c.output, out.dump(2) + "\n");
    return exit_code::ok;
}

int run_bench(const Common& c, const std::string& summary_path, bool seed_given, bool runtime) {
    const std::string bytes = slurp(c.input);
    ExperimentConfig config = load_config_json(c.input);
    if (seed_given) config.seed = c.seed;
    if (c.jobs != 1) config.jobs = c.jobs;
    if (c.output.empty()) fail("usage", "bench needs --output for the CSV", exit_code::usage);

    std::vector<std::string> meta{std::string("tool_version=") + kVersion,
                                  "seed=" + std::to_string(config.seed),
                                  "config_digest=" + fnv1a_hex(bytes)};
    ExperimentReport report = runtime ? runtime_comparison(config, c.output, meta)
                                      : run_experiment(config, c.output, meta);
    std::string spath = summary_path.empty() ? c.output + ".summary.json" : summary_path;
    write_out(spath, report.summary_json);
    return exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathsched: collision-free multi-robot task scheduling toolkit"};
    app.require_subcommand(1);
    app.failure_message(
        [](const CLI::App*, const CLI::Error& e) { return std::string(e.what()) + "\n"; });

    Common c;
    std::uint64_t budget_states = 10'000'000;
    std::string variant = "maintext";
    std::string orientation = "both";
    std::string solution_path, terminals, summary_path;
    int terminal_limit = 6;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub, bool wants_traces = false) {
        sub->add_option("--input,-i", c.input, "input file")->required();
        sub->add_option("--output,-o", c.output, "output file ('-' or empty for stdout)");
        sub->add_option("--seed", c.seed, "seed recorded in output metadata")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--jobs,-j", c.jobs, "worker threads (default 1, deterministic)");
        if (wants_traces) {
            sub->add_option("--traces", c.traces, "also write the trace CSV here");
            sub->add_option("--format", c.format, "json | csv")
                ->check(CLI::IsMember({"json", "csv"}));
        }
    };

    CLI::App* partition = app.add_subcommand("partition", "partition heuristic on a path instance");
    add_common(partition, true);

    CLI::App* exact = app.add_subcommand("exact", "optimal makespan by joint-state search");
    add_common(exact, true);
    exact->add_option("--budget-states", budget_states, "state cap for the search");
    int horizon_override = 0;
    exact->add_option("--horizon", horizon_override, "override the default tau bound");

    CLI::App* ilp = app.add_subcommand("ilp", "integer linear program tooling");
    ilp->require_subcommand(1);
    CLI::App* ilp_emit = ilp->add_subcommand("emit", "write the model as an LP file");
    add_common(ilp_emit);
    ilp_emit->add_option("--variant", variant, "maintext | appendix")
        ->check(CLI::IsMember({"maintext", "appendix"}));
    CLI::App* ilp_check = ilp->add_subcommand("check", "check a solution file against the model");
    add_common(ilp_check);
    ilp_check->add_option("--solution", solution_path, "solver output, 'name value' lines")
        ->required();
    ilp_check->add_option("--variant", variant, "maintext | appendix")
        ->check(CLI::IsMember({"maintext", "appendix"}));

    CLI::App* pe = app.add_subcommand("path-exists", "simple path through a terminal set");
    add_common(pe);
    pe->add_option("--terminals", terminals, "comma-separated vertex ids")->required();
    pe->add_option("--limit", terminal_limit, "largest terminal set tried");
    pe->add_option("--budget-states", budget_states, "node expansion cap");

    CLI::App* sw = app.add_subcommand("shortest-walk", "shortest walk covering a terminal set");
    add_common(sw);
    sw->add_option("--terminals", terminals, "comma-separated vertex ids")->required();

    CLI::App* lattice = app.add_subcommand("lattice", "lattice pipeline");
    lattice->require_subcommand(1);
    CLI::App* lattice_solve = lattice->add_subcommand("solve", "snake-flatten and run partition");
    add_common(lattice_solve, true);
    lattice_solve->add_option("--orientation", orientation, "both | top-left | top-right")
        ->check(CLI::IsMember({"both", "top-left", "top-right"}));

    CLI::App* bench = app.add_subcommand("bench", "experiment harness");
    bench->require_subcommand(1);
    CLI::App* bench_run = bench->add_subcommand("run", "performance-ratio experiment");
    add_common(bench_run);
    bench_run->add_option("--summary", summary_path, "summary JSON path");
    CLI::App* bench_runtime = bench->add_subcommand("runtime", "solver runtime comparison");
    add_common(bench_runtime);
    bench_runtime->add_option("--summary", summary_path, "summary JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (partition->parsed()) return run_partition(c);
        if (exact->parsed()) return run_exact(c, budget_states, horizon_override);
        if (ilp_emit->parsed()) return run_ilp_emit(c, variant);
        if (ilp_check->parsed()) return run_ilp_check(c, variant, solution_path);
        if (pe->parsed()) return run_path_exists(c, terminals, terminal_limit, budget_states);
        if (sw->parsed()) return run_shortest_walk(c, terminals);
        if (lattice_solve->parsed()) return run_lattice(c, orientation);
        if (bench_run->parsed()) return run_bench(c, summary_path, seed_given, false);
        if (bench_runtime->parsed()) return run_bench(c, summary_path, seed_given, true);
    } catch (const file_error& e) {
        fail("unreadable_input", e.what(), exit_code::unreadable);
    } catch (const input_error& e) {
        fail("schema", e.what(), exit_code::schema);
    } catch (const resource_error& e) {
        fail("resource_budget", e.what(), exit_code::budget);
    } catch (const std::exception& e) {
        fail("internal", e.what(), exit_code::schema);
    }
    return exit_code::usage;
}
