#include "pathsched/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "pathsched/util.hpp"

namespace pathsched {

namespace {

std::string idx(std::initializer_list<int> parts) {
    std::string out;
    for (int p : parts) {
        out += '_';
        out += std::to_string(p);
    }
    return out;
}

}  // namespace

IlpModel build_model(const Instance& inst, Horizon horizon, IlpVariant variant) {
    IlpModel model;
    model.k = inst.robot_count();
    model.n = inst.graph.vertex_count();
    model.m = inst.task_count();
    model.tau = horizon.tau;
    model.variant = variant;
    model.tasks = inst.tasks;
    const int k = model.k, n = model.n, m = model.m, tau = model.tau;

    model.var_names.reserve((size_t)(2 * k * n + k * m + m + 1) * tau);
    for (int r = 1; r <= k; ++r)
        for (int v = 1; v <= n; ++v)
            for (int t = 1; t <= tau; ++t) model.var_names.push_back("x" + idx({r, v, t}));
    for (int r = 1; r <= k; ++r)
        for (int v = 1; v <= n; ++v)
            for (int t = 1; t <= tau; ++t) model.var_names.push_back("m" + idx({r, v, t}));
    for (int r = 1; r <= k; ++r)
        for (int i = 1; i <= m; ++i)
            for (int t = 1; t <= tau; ++t) model.var_names.push_back("TCR" + idx({r, i, t}));
    for (int i = 1; i <= m; ++i)
        for (int t = 1; t <= tau; ++t) model.var_names.push_back("TC" + idx({i, t}));
    for (int t = 1; t <= tau; ++t) model.var_names.push_back("AC" + idx({t}));

    auto row = [&model](std::string family, std::string name_suffix,
                        std::vector<std::pair<int, int>> terms, RowSense sense, int rhs) {
        model.rows.push_back(
            {family, family + std::move(name_suffix), std::move(terms), sense, rhs});
    };

    // Initial positions: the formulation is degenerate without rows binding
    // timestep 1 to the starts.
    for (int r = 1; r <= k; ++r)
        row("initpos", idx({r}), {{model.x_id(r, inst.starts[r - 1], 1), 1}}, RowSense::eq, 1);

    // Each robot occupies exactly one vertex per timestep.
    for (int r = 1; r <= k; ++r)
        for (int t = 1; t <= tau; ++t) {
            std::vector<std::pair<int, int>> terms;
            for (int v = 1; v <= n; ++v) terms.push_back({model.x_id(r, v, t), 1});
            row("onepos", idx({r, t}), std::move(terms), RowSense::eq, 1);
        }

    // A robot at v was at v or a neighbor of v one step earlier.
    for (int r = 1; r <= k; ++r)
        for (int v = 1; v <= n; ++v)
            for (int t = 2; t <= tau; ++t) {
                std::vector<std::pair<int, int>> terms{{model.x_id(r, v, t), 1},
                                                       {model.x_id(r, v, t - 1), -1}};
                for (int u : inst.graph.neighbors(v)) terms.push_back({model.x_id(r, u, t - 1), -1});
                row("move", idx({r, v, t}), std::move(terms), RowSense::le, 0);
            }

    // At most one robot per vertex.
    for (int v = 1; v <= n; ++v)
        for (int t = 1; t <= tau; ++t) {
            std::vector<std::pair<int, int>> terms;
            for (int r = 1; r <= k; ++r) terms.push_back({model.x_id(r, v, t), 1});
            row("onevertex", idx({v, t}), std::move(terms), RowSense::le, 1);
        }

    // No two robots cross one edge in opposite directions in the same step.
    for (int r = 1; r <= k; ++r)
        for (int rp = 1; rp <= k; ++rp) {
            if (rp == r) continue;
            for (auto [u, v] : inst.graph.edges())
                for (int t = 2; t <= tau; ++t)
                    row("noswap", idx({r, rp, u, v, t}),
                        {{model.x_id(r, u, t), 1},
                         {model.x_id(r, v, t - 1), 1},
                         {model.x_id(rp, u, t - 1), 1},
                         {model.x_id(rp, v, t), 1}},
                        RowSense::le, 3);
        }

    // Landing linearization: m_rvt = 1 exactly when the robot arrives at v at
    // t. At t=1 the initial placement counts as an arrival.
    for (int r = 1; r <= k; ++r)
        for (int v = 1; v <= n; ++v) {
            row("landinit", idx({r, v}),
                {{model.land_id(r, v, 1), 1}, {model.x_id(r, v, 1), -1}}, RowSense::eq, 0);
            for (int t = 2; t <= tau; ++t) {
                row("landlb", idx({r, v, t}),
                    {{model.x_id(r, v, t), 1},
                     {model.x_id(r, v, t - 1), -1},
                     {model.land_id(r, v, t), -1}},
                    RowSense::le, 0);
                row("landub1", idx({r, v, t}),
                    {{model.land_id(r, v, t), 1}, {model.x_id(r, v, t), -1}}, RowSense::le, 0);
                row("landub2", idx({r, v, t}),
                    {{model.land_id(r, v, t), 1}, {model.x_id(r, v, t - 1), 1}}, RowSense::le, 1);
            }
        }

    // Per-robot completion windows: a window of d_i+1 occupancies whose first
    // step is the arrival certifies the task; the arrival step contributes
    // x - m = 0. Rows are scaled by d_i to keep integer coefficients.
    for (int r = 1; r <= k; ++r)
        for (int i = 1; i <= m; ++i) {
            const int v = inst.tasks[i - 1].vertex;
            const int d = inst.tasks[i - 1].duration;
            for (int t = 1; t <= tau; ++t) {
                std::vector<std::pair<int, int>> terms{{model.tcr_id(r, i, t), d}};
                if (t > 1) terms.push_back({model.tcr_id(r, i, t - 1), -d});
                for (int j = std::max(1, t - d); j <= t; ++j) {
                    terms.push_back({model.x_id(r, v, j), -1});
                    terms.push_back({model.land_id(r, v, j), 1});
                }
                row("tcrwin", idx({r, i, t}), std::move(terms), RowSense::le, 0);
            }
            for (int t = 2; t <= tau; ++t)
                row("tcrmono", idx({r, i, t}),
                    {{model.tcr_id(r, i, t - 1), 1}, {model.tcr_id(r, i, t), -1}}, RowSense::le, 0);
        }

    // TC aggregates per-robot completion; AC needs every TC.
    for (int i = 1; i <= m; ++i) {
        for (int t = 1; t <= tau; ++t) {
            std::vector<std::pair<int, int>> terms{{model.tc_id(i, t), 1}};
            for (int r = 1; r <= k; ++r) terms.push_back({model.tcr_id(r, i, t), -1});
            row("tclink", idx({i, t}), std::move(terms), RowSense::le, 0);
        }
        for (int t = 2; t <= tau; ++t)
            row("tcmono", idx({i, t}), {{model.tc_id(i, t - 1), 1}, {model.tc_id(i, t), -1}},
                RowSense::le, 0);
    }
    if (m > 0)
        for (int t = 1; t <= tau; ++t) {
            std::vector<std::pair<int, int>> terms{{model.ac_id(t), m}};
            for (int i = 1; i <= m; ++i) terms.push_back({model.tc_id(i, t), -1});
            row("allcomplete", idx({t}), std::move(terms), RowSense::le, 0);
        }

    if (variant == IlpVariant::maintext) {
        model.maximize = true;
        for (int t = 1; t <= tau; ++t) model.objective.push_back({model.ac_id(t), 1});
    } else {
        model.maximize = false;
        for (int t = 1; t <= tau; ++t) model.objective.push_back({model.ac_id(t), t});
        std::vector<std::pair<int, int>> terms;
        for (int t = 1; t <= tau; ++t) terms.push_back({model.ac_id(t), 1});
        row("acsum", "", std::move(terms), RowSense::eq, 1);
    }
    return model;
}

namespace {

void append_terms(std::string& out, const IlpModel& model,
                  const std::vector<std::pair<int, int>>& terms) {
    bool first = true;
    size_t line_start = out.rfind('\n') + 1;
    for (auto [var, coeff] : terms) {
        if (coeff == 0) continue;
        std::string piece;
        if (first) {
            if (coeff == 1) piece = "";
            else if (coeff == -1) piece = "- ";
            else piece = std::to_string(coeff) + " ";
            if (coeff < -1) piece = "- " + std::to_string(-coeff) + " ";
        } else {
            piece = coeff > 0 ? "+ " : "- ";
            int mag = std::abs(coeff);
            if (mag != 1) piece += std::to_string(mag) + " ";
        }
        piece += model.var_names[var];
        if (!first) piece = " " + piece;
        if (out.size() - line_start + piece.size() > 200) {
            out += "\n  ";
            line_start = out.rfind('\n') + 1;
            if (!first) piece.erase(0, 1);
        }
        out += piece;
        first = false;
    }
    if (first) out += "0";  // empty expression
}

}  // namespace

std::string emit_lp(const IlpModel& model, const std::vector<std::string>& meta) {
    std::string out;
    out += "\\ pathsched LP export\n";
    out += "\\ variant=" + std::string(model.variant == IlpVariant::maintext ? "maintext" : "appendix") +
           " k=" + std::to_string(model.k) + " n=" + std::to_string(model.n) +
           " m=" + std::to_string(model.m) + " tau=" + std::to_string(model.tau) + "\n";
    for (const auto& line : meta) out += "\\ " + line + "\n";
    out += model.maximize ? "Maximize\n" : "Minimize\n";
    out += " obj: ";
    append_terms(out, model, model.objective);
    out += "\nSubject To\n";
    for (const IlpRow& r : model.rows) {
        out += " " + r.name + ": ";
        append_terms(out, model, r.terms);
        switch (r.sense) {
            case RowSense::le: out += " <= "; break;
            case RowSense::eq: out += " = "; break;
            case RowSense::ge: out += " >= "; break;
        }
        out += std::to_string(r.rhs) + "\n";
    }
    out += "Binary\n";
    for (const auto& name : model.var_names) out += " " + name + "\n";
    out += "End\n";
    return out;
}

Assignment assignment_from_schedules(const IlpModel& model, const Instance& inst,
                                     const ScheduleSet& set) {
    if (model.k != inst.robot_count() || model.n != inst.graph.vertex_count() ||
        model.m != inst.task_count())
        throw input_error("model and instance dimensions differ");
    if (set.horizon() > model.tau) throw input_error("trace longer than the model horizon");
    const ScheduleSet padded = padded_to(set, model.tau);

    Assignment a;
    a.values.assign(model.var_count(), 0);
    for (int r = 1; r <= model.k; ++r)
        for (int t = 1; t <= model.tau; ++t) {
            int v = padded.traces[r - 1].at_time(t);
            a.values[model.x_id(r, v, t)] = 1;
            bool arrived = (t == 1) || padded.traces[r - 1].at_time(t - 1) != v;
            if (arrived) a.values[model.land_id(r, v, t)] = 1;
        }

    // TCR: per-robot completion closure.
    for (int r = 1; r <= model.k; ++r)
        for (int i = 1; i <= model.m; ++i) {
            const int v = inst.tasks[i - 1].vertex;
            const int d = inst.tasks[i - 1].duration;
            int streak = 0, completed_at = 0;
            for (int t = 1; t <= model.tau && completed_at == 0; ++t) {
                streak = (padded.traces[r - 1].at_time(t) == v) ? streak + 1 : 0;
                if (streak >= d + 1) completed_at = t;
            }
            if (completed_at)
                for (int t = completed_at; t <= model.tau; ++t)
                    a.values[model.tcr_id(r, i, t)] = 1;
        }
    for (int i = 1; i <= model.m; ++i)
        for (int t = 1; t <= model.tau; ++t) {
            int any = 0;
            for (int r = 1; r <= model.k; ++r) any |= a.values[model.tcr_id(r, i, t)];
            a.values[model.tc_id(i, t)] = (std::uint8_t)any;
        }

    if (model.variant == IlpVariant::maintext) {
        for (int t = 1; t <= model.tau; ++t) {
            int all = 1;
            for (int i = 1; i <= model.m; ++i) all &= a.values[model.tc_id(i, t)];
            a.values[model.ac_id(t)] = (std::uint8_t)all;
        }
    } else {
        for (int t = 1; t <= model.tau; ++t) {
            int all = 1;
            for (int i = 1; i <= model.m; ++i) all &= a.values[model.tc_id(i, t)];
            if (all) {
                a.values[model.ac_id(t)] = 1;  // one-hot: earliest all-complete step
                break;
            }
        }
    }
    return a;
}

CheckReport check_assignment(const IlpModel& model, const Assignment& assignment) {
    if ((int)assignment.values.size() != model.var_count())
        throw input_error("assignment is not total over the model's variables");
    CheckReport report;
    for (const IlpRow& r : model.rows) {
        long long lhs = 0;
        for (auto [var, coeff] : r.terms) lhs += (long long)coeff * assignment.values[var];
        bool ok = (r.sense == RowSense::le)   ? lhs <= r.rhs
                  : (r.sense == RowSense::eq) ? lhs == r.rhs
                                              : lhs >= r.rhs;
        if (!ok) {
            report.satisfied = false;
            report.violations[r.family].push_back(r.name);
        }
    }
    return report;
}

ScheduleSet schedules_from_assignment(const IlpModel& model, const Assignment& assignment) {
    if ((int)assignment.values.size() != model.var_count())
        throw input_error("assignment is not total over the model's variables");
    ScheduleSet set;
    set.traces.resize(model.k);
    for (int r = 1; r <= model.k; ++r)
        for (int t = 1; t <= model.tau; ++t) {
            int where = 0;
            for (int v = 1; v <= model.n; ++v)
                if (assignment.values[model.x_id(r, v, t)]) {
                    if (where) throw input_error("onepos violated: robot at two vertices");
                    where = v;
                }
            if (!where) throw input_error("onepos violated: robot has no position");
            set.traces[r - 1].positions.push_back(where);
        }
    return set;
}

int decode_makespan(const IlpModel& model, const Assignment& assignment) {
    if (model.variant == IlpVariant::maintext) {
        int sum = 0;
        for (int t = 1; t <= model.tau; ++t) sum += assignment.values[model.ac_id(t)];
        return model.tau - sum;
    }
    int hot = 0, count = 0;
    for (int t = 1; t <= model.tau; ++t)
        if (assignment.values[model.ac_id(t)]) {
            hot = t;
            ++count;
        }
    if (count != 1) throw input_error("appendix decode wants exactly one AC set");
    return hot - 1;
}

Assignment parse_solution(const IlpModel& model, const std::string& text) {
    std::unordered_map<std::string, int> by_name;
    by_name.reserve(model.var_names.size());
    for (int i = 0; i < model.var_count(); ++i) by_name.emplace(model.var_names[i], i);

    Assignment a;
    a.values.assign(model.var_count(), 0);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string name;
        double value;
        if (!(row >> name >> value)) throw input_error("bad solution line: " + line);
        auto it = by_name.find(name);
        if (it == by_name.end()) throw input_error("unknown variable in solution: " + name);
        long rounded = std::lround(value);
        if (std::abs(value - rounded) > 1e-4 || (rounded != 0 && rounded != 1))
            throw input_error("non-binary value in solution: " + line);
        a.values[it->second] = (std::uint8_t)rounded;
    }
    return a;
}

std::string assignment_to_text(const IlpModel& model, const Assignment& assignment) {
    std::string out;
    for (int i = 0; i < model.var_count(); ++i) {
        out += model.var_names[i];
        out += assignment.values[i] ? " 1\n" : " 0\n";
    }
    return out;
}

}  // namespace pathsched
