#include <unitsched/density.hpp>
#include <unitsched/edf.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace unitsched {

Count BudgetTrace::peak() const {
    return budgets.empty() ? 0 : *std::max_element(budgets.begin(), budgets.end());
}

BudgetTrace BudgetTrace::constant(Time horizon, Count machines) {
    return BudgetTrace{std::vector<Count>(static_cast<std::size_t>(std::max<Time>(horizon, 0)), machines)};
}

Count ScheduleTrace::total_executed() const {
    Count total = 0;
    for (Count e : executed) total += e;
    return total;
}

namespace {

void check_budget(const JobSet& jobs, const BudgetTrace& budget) {
    if (budget.horizon() < jobs.horizon()) {
        throw std::invalid_argument("budget covers " + std::to_string(budget.horizon()) +
                                    " slots but jobs run until " + std::to_string(jobs.horizon()));
    }
    for (Count b : budget.budgets) {
        if (b < 0) throw std::invalid_argument("negative machine budget");
    }
}

}  // namespace

ScheduleTrace simulate_edf(const JobSet& jobs, const BudgetTrace& budget) {
    check_budget(jobs, budget);
    const Time horizon = budget.horizon();

    ScheduleTrace trace;
    trace.executed.assign(static_cast<std::size_t>(horizon), 0);
    trace.ready.assign(static_cast<std::size_t>(horizon), 0);
    trace.cumulative_misses.assign(static_cast<std::size_t>(horizon), 0);
    trace.assignment.resize(static_cast<std::size_t>(horizon));

    // deadline -> groups in arrival order
    std::map<Time, std::deque<Job>> queue;
    Count queued = 0;
    std::size_t next = 0;
    const auto groups = jobs.groups();

    for (Time t = 0; t < horizon; ++t) {
        const auto slot = static_cast<std::size_t>(t);
        while (next < groups.size() && groups[next].arrival == t) {
            queue[groups[next].deadline].push_back(groups[next]);
            queued += groups[next].count;
            ++next;
        }
        trace.ready[slot] = queued;

        Count capacity = std::min(budget.at(t), queued);
        while (capacity > 0) {
            auto& [deadline, bucket] = *queue.begin();
            Job& head = bucket.front();
            Count run = std::min(capacity, head.count);
            trace.assignment[slot].push_back({head.arrival, head.deadline, run});
            head.count -= run;
            capacity -= run;
            queued -= run;
            trace.executed[slot] += run;
            if (head.count == 0) {
                bucket.pop_front();
                if (bucket.empty()) queue.erase(queue.begin());
            }
        }
        trace.peak_machines = std::max(trace.peak_machines, trace.executed[slot]);

        while (!queue.empty() && queue.begin()->first <= t + 1) {
            for (const auto& g : queue.begin()->second) {
                trace.misses.push_back(g);
                trace.miss_count += g.count;
                queued -= g.count;
            }
            queue.erase(queue.begin());
        }
        trace.cumulative_misses[slot] = trace.miss_count;
    }
    return trace;
}

FeasibilityVerdict feasible_by_inequalities(const JobSet& jobs, const BudgetTrace& budget) {
    check_budget(jobs, budget);
    FeasibilityVerdict verdict;
    if (jobs.empty()) return verdict;

    std::vector<Count> cumulative(budget.budgets.size() + 1, 0);
    for (std::size_t i = 0; i < budget.budgets.size(); ++i) cumulative[i + 1] = cumulative[i] + budget.budgets[i];

    WorkloadIndex index(jobs);
    std::vector<Time> lefts = index.arrivals();
    if (lefts.front() != 0) lefts.insert(lefts.begin(), 0);

    for (Time l : lefts) {
        for (Time r : index.deadlines()) {
            if (r <= l) continue;
            Count work = index.workload(l, r);
            Count supply = cumulative[static_cast<std::size_t>(r)] - cumulative[static_cast<std::size_t>(l)];
            if (supply < work) {
                verdict.feasible = false;
                verdict.certificate = Interval(l, r);
                verdict.budget_in_certificate = supply;
                verdict.workload_in_certificate = work;
                return verdict;
            }
        }
    }
    return verdict;
}

Count opt_bruteforce(const JobSet& jobs) {
    if (jobs.empty()) return 0;
    const Time horizon = jobs.horizon();
    Count lo = 1;
    Count hi = jobs.total_workload();
    while (lo < hi) {
        Count mid = lo + (hi - lo) / 2;
        if (simulate_edf(jobs, BudgetTrace::constant(horizon, mid)).miss_count == 0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

void write_trace_csv(std::ostream& out, const BudgetTrace& budget, const ScheduleTrace& trace) {
    out << "t,budget,executed,ready,cumulative_misses\n";
    for (std::size_t t = 0; t < trace.executed.size(); ++t) {
        out << t << ',' << budget.budgets[t] << ',' << trace.executed[t] << ',' << trace.ready[t] << ','
            << trace.cumulative_misses[t] << '\n';
    }
}

}  // namespace unitsched
