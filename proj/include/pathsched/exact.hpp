#pragma once

#include <cstdint>

#include "pathsched/schedule.hpp"

namespace pathsched {

/// Upper bound on schedule length: tau = n * k + sum of durations.
struct Horizon {
    int tau = 0;
};

Horizon horizon_bound(const Instance& inst);

struct ExactOptions {
    std::uint64_t state_cap = 10'000'000;  // duplicate-pruned states kept in memory
    int threads = 1;                       // frontier expansion workers; <=0 means all
};

enum class ExactStatus { found, infeasible_within_horizon, budget_exceeded };

struct ExactResult {
    ExactStatus status = ExactStatus::infeasible_within_horizon;
    int makespan = -1;
    ScheduleSet witness;  // only meaningful when status == found
    std::uint64_t states_expanded = 0;
    std::uint64_t peak_frontier = 0;
};

/// Optimal makespan by breadth-first search over joint robot states
/// (positions, completed-task bitmask, per-robot consecutive-stay streaks).
/// Successors enumerate stay-first then neighbors ascending per robot, so the
/// witness is deterministic. Frontier expansion is OpenMP-parallel in batches
/// whose results are merged in frontier order, which keeps the visited set,
/// the statistics and the witness identical to the serial reference for any
/// thread count.
ExactResult optimal_makespan(const Instance& inst, Horizon horizon, const ExactOptions& opts = {});

/// Plain single-loop reference implementation of the same search, kept for
/// testing the parallel kernel against.
ExactResult optimal_makespan_reference(const Instance& inst, Horizon horizon,
                                       std::uint64_t state_cap = 10'000'000);

}  // namespace pathsched
