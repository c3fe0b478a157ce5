#pragma once

#include <unitsched/job.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace unitsched {

/// Machine budget for every slot 0 <= t < horizon().
struct BudgetTrace {
    std::vector<Count> budgets;

    Time horizon() const { return static_cast<Time>(budgets.size()); }
    Count at(Time t) const { return budgets[static_cast<std::size_t>(t)]; }
    Count peak() const;

    static BudgetTrace constant(Time horizon, Count machines);
};

/// Outcome of an EDF run. Jobs are reported in aggregate: a Job entry with
/// count n stands for n identical (arrival, deadline) jobs.
struct ScheduleTrace {
    std::vector<Count> executed;                ///< jobs run in each slot
    std::vector<Count> ready;                   ///< ready-queue size before execution
    std::vector<Count> cumulative_misses;       ///< misses recorded up to the end of each slot
    std::vector<std::vector<Job>> assignment;   ///< which groups ran in each slot
    std::vector<Job> misses;                    ///< groups whose deadline passed unexecuted
    Count miss_count = 0;
    Count peak_machines = 0;                    ///< M(S) = max_t executed[t]

    Count total_executed() const;
};

/// Runs earliest-deadline-first under the given per-slot budget.
///
/// At slot t the engine admits the jobs arriving at t, then executes
/// min(budget[t], ready) jobs ordered by deadline, then arrival. After the
/// slot, jobs whose deadline is t + 1 and that are still queued are recorded
/// as misses and dropped, so they never consume later budget.
///
/// Throws std::invalid_argument if the budget is shorter than the largest
/// deadline or contains a negative entry.
ScheduleTrace simulate_edf(const JobSet& jobs, const BudgetTrace& budget);

/// Interval-test feasibility verdict: EDF under `budget` completes every job
/// iff every interval [l, r) receives at least as much budget as the
/// workload confined to it.
struct FeasibilityVerdict {
    bool feasible = true;
    std::optional<Interval> certificate;  ///< violated interval, smallest left then right
    Count budget_in_certificate = 0;
    Count workload_in_certificate = 0;
};

/// Checks the interval inequalities for left ends in arrivals ∪ {0} and
/// right ends in deadlines; no simulation is involved.
FeasibilityVerdict feasible_by_inequalities(const JobSet& jobs, const BudgetTrace& budget);

/// Smallest constant machine count for which EDF misses nothing, found by
/// binary search over simulations. Zero for the empty set. Independent of
/// the density formula, so it serves as an oracle for opt_machines.
Count opt_bruteforce(const JobSet& jobs);

/// CSV with header `t,budget,executed,ready,cumulative_misses`.
void write_trace_csv(std::ostream& out, const BudgetTrace& budget, const ScheduleTrace& trace);

}  // namespace unitsched
