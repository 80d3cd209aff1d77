#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pathsched/exact.hpp"
#include "pathsched/schedule.hpp"

namespace pathsched {

/// maintext: maximise sum_t AC_t.
/// appendix: minimise sum_t t*AC_t with sum_t AC_t = 1 (AC is one-hot there).
enum class IlpVariant { maintext, appendix };

enum class RowSense { le, eq, ge };

struct IlpRow {
    std::string family;  // e.g. "noswap"; violations are reported per family
    std::string name;    // family plus indices, unique
    std::vector<std::pair<int, int>> terms;  // (variable id, coefficient)
    RowSense sense = RowSense::le;
    int rhs = 0;
};

/// Binary program over x (positions), m (landings), TCR/TC (per-robot / global
/// task completion) and AC (all complete). Variable ids are laid out block by
/// block in that order; names follow the pattern x_r_v_t, m_r_v_t, TCR_r_i_t,
/// TC_i_t, AC_t.
struct IlpModel {
    int k = 0, n = 0, m = 0, tau = 0;
    IlpVariant variant = IlpVariant::maintext;
    std::vector<Task> tasks;

    std::vector<std::string> var_names;
    std::vector<IlpRow> rows;
    bool maximize = true;
    std::vector<std::pair<int, int>> objective;

    int var_count() const { return (int)var_names.size(); }
    int x_id(int r, int v, int t) const { return ((r - 1) * n + (v - 1)) * tau + (t - 1); }
    int land_id(int r, int v, int t) const { return k * n * tau + x_id(r, v, t); }
    int tcr_id(int r, int i, int t) const {
        return 2 * k * n * tau + ((r - 1) * m + (i - 1)) * tau + (t - 1);
    }
    int tc_id(int i, int t) const { return (2 * k * n + k * m) * tau + (i - 1) * tau + (t - 1); }
    int ac_id(int t) const { return (2 * k * n + k * m + m) * tau + (t - 1); }
};

IlpModel build_model(const Instance& inst, Horizon horizon, IlpVariant variant = IlpVariant::maintext);

/// Deterministic LP-format text (objective, named rows, binary section).
/// Re-emitting the same model is byte-identical. `meta` lines become leading
/// comments.
std::string emit_lp(const IlpModel& model, const std::vector<std::string>& meta = {});

/// Total 0/1 valuation of the model's variables, indexed by variable id.
struct Assignment {
    std::vector<std::uint8_t> values;
};

/// Derives the assignment a schedule set induces: x from the traces (padded
/// with stays to tau), m exactly on arrival steps, TCR/TC/AC at the maximal
/// values the traces support (for the appendix variant AC is the one-hot
/// first-all-complete indicator instead).
Assignment assignment_from_schedules(const IlpModel& model, const Instance& inst,
                                     const ScheduleSet& set);

struct CheckReport {
    bool satisfied = true;
    std::map<std::string, std::vector<std::string>> violations;  // family -> row names
};

CheckReport check_assignment(const IlpModel& model, const Assignment& assignment);

/// Inverse of assignment_from_schedules on the x block. Requires the onepos
/// rows to hold (input_error otherwise).
ScheduleSet schedules_from_assignment(const IlpModel& model, const Assignment& assignment);

/// maintext: tau - sum_t AC_t. appendix: the one-hot AC timestep minus 1.
int decode_makespan(const IlpModel& model, const Assignment& assignment);

/// Plain "name value" lines; '#' comments and blank lines are skipped.
/// Unknown names are an input_error; absent variables default to 0.
Assignment parse_solution(const IlpModel& model, const std::string& text);
std::string assignment_to_text(const IlpModel& model, const Assignment& assignment);

}  // namespace pathsched
