#include "pathsched/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "pathsched/exact.hpp"
#include "pathsched/lattice.hpp"
#include "pathsched/partition.hpp"
#include "pathsched/util.hpp"

namespace pathsched {

using nlohmann::json;

namespace {

IntRange parse_range(const json& j) {
    auto v = j.get<std::vector<int>>();
    if (v.size() == 1) return {v[0], v[0]};
    if (v.size() != 2 || v[0] > v[1]) throw input_error("range wants [lo, hi]");
    return {v[0], v[1]};
}

int draw(std::mt19937_64& rng, int lo, int hi) { return lo + (int)(rng() % (std::uint64_t)(hi - lo + 1)); }

std::vector<int> draw_distinct(std::mt19937_64& rng, int count, int n) {
    std::set<int> picked;
    while ((int)picked.size() < count) picked.insert(draw(rng, 1, n));
    return {picked.begin(), picked.end()};
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
        .count();
}

std::string fmt(double x, int digits) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << x;
    return out.str();
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        c.family = j.at("family").get<std::string>();
        if (c.family != "path" && c.family != "lattice")
            throw input_error("family must be path or lattice");
        if (c.family == "path") c.n = parse_range(j.at("n"));
        else c.grid = parse_range(j.at("grid"));
        c.k = parse_range(j.at("k"));
        c.m = parse_range(j.at("m"));
        const json& d = j.at("duration");
        std::string model = d.at("model").get<std::string>();
        if (model == "uniform_equal") c.duration.kind = DurationModel::Kind::uniform_equal;
        else if (model == "random") c.duration.kind = DurationModel::Kind::random_range;
        else if (model == "fixed_total") c.duration.kind = DurationModel::Kind::fixed_total;
        else throw input_error("unknown duration model: " + model);
        c.duration.value = d.at("value").get<int>();
        if (c.duration.value < 1) throw input_error("duration value must be positive");
        c.samples = j.at("samples").get<int>();
        if (c.samples < 1) throw input_error("samples must be >= 1");
        c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("exact_state_cap")) c.exact_state_cap = j.at("exact_state_cap").get<std::uint64_t>();
        if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
        if (j.contains("store_traces")) c.store_traces_dir = j.at("store_traces").get<std::string>();
    } catch (const json::exception& e) {
        throw input_error(std::string("config schema mismatch: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw file_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::vector<Cell> experiment_cells(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    const bool lattice = config.family == "lattice";
    const IntRange size = lattice ? config.grid : config.n;
    int index = 0;
    for (int s = size.lo; s <= size.hi; ++s)
        for (int k = config.k.lo; k <= config.k.hi; ++k)
            for (int m = config.m.lo; m <= config.m.hi; ++m) {
                Cell cell;
                cell.index = index++;
                cell.k = k;
                cell.m = m;
                if (lattice) {
                    cell.rows = cell.cols = s;
                    cell.n = s * s;
                } else {
                    cell.n = s;
                }
                if (k > cell.n) cell.skip_reason = "more robots than vertices";
                else if (m > cell.n) cell.skip_reason = "more tasks than vertices";
                else if (config.duration.kind == DurationModel::Kind::fixed_total &&
                         config.duration.value < m)
                    cell.skip_reason = "fixed total smaller than task count";
                cells.push_back(cell);
            }
    return cells;
}

Instance generate_instance(const ExperimentConfig& config, const Cell& cell, int sample) {
    std::mt19937_64 rng(mix64(config.seed ^ mix64(((std::uint64_t)cell.index << 20) | (std::uint64_t)sample)));

    Instance inst;
    if (config.family == "lattice") {
        inst.graph = make_lattice_graph(cell.rows, cell.cols);
        inst.kind = GraphKind::lattice;
        inst.rows = cell.rows;
        inst.cols = cell.cols;
    } else {
        inst.graph = make_path_graph(cell.n);
        inst.kind = GraphKind::path;
    }

    inst.starts = draw_distinct(rng, cell.k, cell.n);  // set iteration = sorted
    std::vector<int> task_vertices = draw_distinct(rng, cell.m, cell.n);

    std::vector<int> durations(cell.m);
    switch (config.duration.kind) {
        case DurationModel::Kind::uniform_equal:
            std::fill(durations.begin(), durations.end(), config.duration.value);
            break;
        case DurationModel::Kind::random_range:
            for (int& d : durations) d = draw(rng, 1, config.duration.value);
            break;
        case DurationModel::Kind::fixed_total: {
            // Composition of the total into m positive parts via distinct cuts.
            std::vector<int> cuts =
                cell.m > 1 ? draw_distinct(rng, cell.m - 1, config.duration.value - 1)
                           : std::vector<int>{};
            int prev = 0;
            for (int i = 0; i < cell.m; ++i) {
                int next = (i == cell.m - 1) ? config.duration.value : cuts[i];
                durations[i] = next - prev;
                prev = next;
            }
            break;
        }
    }
    for (int i = 0; i < cell.m; ++i) inst.tasks.push_back({task_vertices[i], durations[i]});
    return inst;
}

ResultRow performance_ratio(const Instance& inst, std::uint64_t state_cap) {
    ResultRow row;
    row.family = inst.kind == GraphKind::lattice ? "lattice" : "path";
    row.n = inst.graph.vertex_count();
    row.rows = inst.rows;
    row.cols = inst.cols;
    row.k = inst.robot_count();
    row.m = inst.task_count();
    for (const Task& t : inst.tasks) row.durations.push_back(t.duration);

    ScheduleSet heuristic_schedules;
    auto t0 = std::chrono::steady_clock::now();
    if (inst.kind == GraphKind::lattice) {
        LatticeResult lr = solve_lattice_via_partition(inst);
        row.dp_value = lr.dp_value;
        row.executed = lr.executed_makespan;
        row.discrepancy = lr.discrepancy;
        heuristic_schedules = std::move(lr.schedules);
    } else {
        PartitionResult pr = solve_partition(inst);
        row.dp_value = pr.dp_value;
        row.executed = pr.executed_makespan;
        row.discrepancy = pr.discrepancy;
        heuristic_schedules = std::move(pr.schedules);
    }
    row.partition_ms = elapsed_ms(t0);
    if (find_collision(heuristic_schedules, inst.graph))
        throw std::runtime_error("heuristic schedule failed collision validation");

    // The paper's tau can undershoot the optimum (one robot, tasks at both
    // ends); the executed heuristic makespan is an achievable schedule, so
    // searching up to it guarantees the optimum is inside the horizon.
    Horizon search{std::max(horizon_bound(inst).tau, row.executed)};
    t0 = std::chrono::steady_clock::now();
    ExactResult ex = optimal_makespan(inst, search, {state_cap, 1});
    row.exact_ms = elapsed_ms(t0);

    if (ex.status == ExactStatus::budget_exceeded) {
        row.oracle_status = "budget";
        return row;
    }
    if (ex.status == ExactStatus::infeasible_within_horizon) {
        row.oracle_status = "infeasible";
        return row;
    }
    if (find_collision(ex.witness, inst.graph) || makespan(ex.witness, inst) != ex.makespan)
        throw std::runtime_error("exact witness failed validation");

    row.exact_opt = ex.makespan;
    int dmin = row.m ? *std::min_element(row.durations.begin(), row.durations.end()) : 0;
    int dmax = row.m ? *std::max_element(row.durations.begin(), row.durations.end()) : 0;
    row.ratio = row.exact_opt > 0 ? (double)row.executed / row.exact_opt
                                  : (row.executed == row.exact_opt ? 1.0 : -1.0);
    row.optimal = row.executed == row.exact_opt;
    row.within_dmin = row.executed <= row.exact_opt + dmin;
    row.within_dmax = row.executed <= row.exact_opt + dmax;
    return row;
}

std::string result_csv_header() {
    return "instance_id,seed,family,n,rows,cols,k,m,durations,dp_value,executed,exact,ratio,"
           "optimal,within_dmin,within_dmax,discrepancy,oracle_status,partition_ms,exact_ms";
}

std::string result_row_csv(const ResultRow& row) {
    std::ostringstream out;
    out << row.instance_id << ',' << row.seed << ',' << row.family << ',' << row.n << ','
        << row.rows << ',' << row.cols << ',' << row.k << ',' << row.m << ',';
    for (size_t i = 0; i < row.durations.size(); ++i)
        out << (i ? ";" : "") << row.durations[i];
    out << ',' << row.dp_value << ',' << row.executed << ',' << row.exact_opt << ','
        << fmt(row.ratio, 6) << ',' << row.optimal << ',' << row.within_dmin << ','
        << row.within_dmax << ',' << row.discrepancy << ',' << row.oracle_status << ','
        << fmt(row.partition_ms, 3) << ',' << fmt(row.exact_ms, 3);
    return out.str();
}

ResultRow parse_result_row_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else cur += ch;
    }
    fields.push_back(cur);
    if (fields.size() != 20) throw input_error("bad result row: " + line);
    ResultRow r;
    r.instance_id = fields[0];
    r.seed = std::stoull(fields[1]);
    r.family = fields[2];
    r.n = std::stoi(fields[3]);
    r.rows = std::stoi(fields[4]);
    r.cols = std::stoi(fields[5]);
    r.k = std::stoi(fields[6]);
    r.m = std::stoi(fields[7]);
    if (!fields[8].empty()) {
        std::istringstream ds(fields[8]);
        std::string part;
        while (std::getline(ds, part, ';')) r.durations.push_back(std::stoi(part));
    }
    r.dp_value = std::stoll(fields[9]);
    r.executed = std::stoi(fields[10]);
    r.exact_opt = std::stoi(fields[11]);
    r.ratio = std::stod(fields[12]);
    r.optimal = fields[13] == "1";
    r.within_dmin = fields[14] == "1";
    r.within_dmax = fields[15] == "1";
    r.discrepancy = fields[16] == "1";
    r.oracle_status = fields[17];
    r.partition_ms = std::stod(fields[18]);
    r.exact_ms = std::stod(fields[19]);
    return r;
}

namespace {

std::string cell_id_of_row_line(const std::string& line) {
    // instance ids look like c<cell>s<sample>
    auto s = line.find('s');
    auto comma = line.find(',');
    if (line.empty() || line[0] != 'c' || s == std::string::npos || comma == std::string::npos ||
        s > comma)
        return "";
    return line.substr(0, s);
}

std::vector<ResultRow> compute_cell_rows(const ExperimentConfig& config, const Cell& cell) {
    std::vector<ResultRow> rows(config.samples);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(config.jobs > 0 ? config.jobs : omp_get_max_threads()) if (config.jobs != 1)
#endif
    for (int s = 0; s < config.samples; ++s) {
        Instance inst = generate_instance(config, cell, s);
        ResultRow row = performance_ratio(inst, config.exact_state_cap);
        row.instance_id = "c" + std::to_string(cell.index) + "s" + std::to_string(s);
        row.seed = mix64(config.seed ^ mix64(((std::uint64_t)cell.index << 20) | (std::uint64_t)s));
        rows[s] = std::move(row);

        if (!config.store_traces_dir.empty()) {
            std::filesystem::create_directories(config.store_traces_dir);
            Instance again = generate_instance(config, cell, s);
            ScheduleSet sched = again.kind == GraphKind::lattice
                                    ? solve_lattice_via_partition(again).schedules
                                    : solve_partition(again).schedules;
            std::ofstream tr(config.store_traces_dir + "/" + rows[s].instance_id + ".traces.csv");
            tr << traces_to_csv(sched, {"instance_id=" + rows[s].instance_id});
            std::ofstream ij(config.store_traces_dir + "/" + rows[s].instance_id + ".instance.json");
            ij << instance_to_json(again);
        }
    }
    return rows;
}

json cell_summary(const Cell& cell, const std::vector<ResultRow>& rows) {
    json c;
    c["cell"] = cell.index;
    c["n"] = cell.n;
    if (cell.rows) {
        c["rows"] = cell.rows;
        c["cols"] = cell.cols;
    }
    c["k"] = cell.k;
    c["m"] = cell.m;
    if (!cell.skip_reason.empty()) {
        c["skipped"] = cell.skip_reason;
        return c;
    }
    int ok = 0, optimal = 0, dmin = 0, dmax = 0, disc = 0;
    double ratio_sum = 0;
    for (const ResultRow& r : rows) {
        if (r.oracle_status != "ok") continue;
        ++ok;
        ratio_sum += r.ratio;
        optimal += r.optimal;
        dmin += r.within_dmin;
        dmax += r.within_dmax;
        disc += r.discrepancy;
    }
    c["samples"] = (int)rows.size();
    c["oracle_ok"] = ok;
    c["mean_ratio"] = ok ? ratio_sum / ok : -1.0;
    c["prop_optimal"] = ok ? (double)optimal / ok : -1.0;
    c["prop_within_dmin"] = ok ? (double)dmin / ok : -1.0;
    c["prop_within_dmax"] = ok ? (double)dmax / ok : -1.0;
    c["discrepancies"] = disc;
    return c;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& csv_path,
                                const std::vector<std::string>& meta) {
    const std::vector<Cell> cells = experiment_cells(config);

    // Resume support: keep the longest prefix of cells fully present in an
    // existing output, recompute from the first incomplete cell.
    std::vector<std::vector<std::string>> existing(cells.size());
    {
        std::ifstream in(csv_path);
        std::string line;
        while (in && std::getline(in, line)) {
            std::string cid = cell_id_of_row_line(line);
            if (cid.empty()) continue;
            int idx = std::atoi(cid.c_str() + 1);
            if (idx >= 0 && idx < (int)cells.size()) existing[idx].push_back(line);
        }
    }

    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw file_error("cannot open output file: " + csv_path);
    out << "# pathsched-bench-csv v1\n";
    for (const auto& line : meta) out << "# " << line << "\n";
    out << result_csv_header() << "\n";

    ExperimentReport report;
    json summary;
    summary["cells"] = json::array();
    bool prefix_intact = true;
    for (const Cell& cell : cells) {
        if (!cell.skip_reason.empty()) {
            ++report.cells_skipped;
            summary["cells"].push_back(cell_summary(cell, {}));
            continue;
        }
        std::vector<ResultRow> rows;
        if (prefix_intact && (int)existing[cell.index].size() == config.samples) {
            for (const auto& line : existing[cell.index]) {
                out << line << "\n";
                rows.push_back(parse_result_row_csv(line));
            }
        } else {
            prefix_intact = false;
            rows = compute_cell_rows(config, cell);
            for (const ResultRow& r : rows) out << result_row_csv(r) << "\n";
        }
        report.rows_written += (int)rows.size();
        out.flush();
        summary["cells"].push_back(cell_summary(cell, rows));
    }

    summary["family"] = config.family;
    summary["seed"] = config.seed;
    summary["samples_per_cell"] = config.samples;
    report.summary_json = summary.dump(2) + "\n";
    return report;
}

ExperimentReport runtime_comparison(const ExperimentConfig& config, const std::string& csv_path,
                                    const std::vector<std::string>& meta) {
    const std::vector<Cell> cells = experiment_cells(config);

    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw file_error("cannot open output file: " + csv_path);
    out << "# pathsched-runtime-csv v1\n";
    for (const auto& line : meta) out << "# " << line << "\n";
    out << "m,sample,partition_ms,exact_ms\n";

    ExperimentReport report;
    json summary;
    summary["medians"] = json::array();
    for (const Cell& cell : cells) {
        if (!cell.skip_reason.empty()) {
            ++report.cells_skipped;
            continue;
        }
        std::vector<double> part_ms(config.samples), exact_ms(config.samples);
        for (int s = 0; s < config.samples; ++s) {
            Instance inst = generate_instance(config, cell, s);
            ResultRow row = performance_ratio(inst, config.exact_state_cap);
            part_ms[s] = row.partition_ms;
            exact_ms[s] = row.exact_ms;
            out << cell.m << ',' << s << ',' << fmt(row.partition_ms, 3) << ','
                << fmt(row.exact_ms, 3) << "\n";
            ++report.rows_written;
        }
        out.flush();
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            size_t h = v.size() / 2;
            return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
        };
        json entry;
        entry["m"] = cell.m;
        entry["k"] = cell.k;
        entry["n"] = cell.n;
        entry["partition_ms_median"] = median(part_ms);
        entry["exact_ms_median"] = median(exact_ms);
        summary["medians"].push_back(entry);
    }
    report.summary_json = summary.dump(2) + "\n";
    return report;
}

}  // namespace pathsched
