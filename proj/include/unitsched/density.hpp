#pragma once

#include <unitsched/job.hpp>
#include <unitsched/rational.hpp>

#include <vector>

namespace unitsched {

using Density = Rational;

/// A maximum density together with the interval that attains it.
struct DensityWitness {
    Density value;
    Interval interval;
};

/// Number of jobs whose whole window lies in iv (left <= arrival, deadline <= right).
Rational workload(const JobSet& jobs, const Interval& iv);
Rational workload(const ArrivalSequence& seq, const Interval& iv);

Density density(const JobSet& jobs, const Interval& iv);
Density density(const ArrivalSequence& seq, const Interval& iv);

/// Maximum density over intervals containing slot t, with its defining
/// interval: smallest left end, then smallest right end. When the maximum
/// is zero the witness is [t, t + 1).
DensityWitness max_density_at(const JobSet& jobs, Time t);
DensityWitness max_density_at(const ArrivalSequence& seq, Time t);

/// Maximum density over all intervals. Only intervals whose left end is an
/// arrival and whose right end is a deadline are evaluated.
DensityWitness max_density(const JobSet& jobs);
DensityWitness max_density(const ArrivalSequence& seq);

/// Optimal offline machine count, the ceiling of the maximum density.
/// Zero for the empty set.
Count opt_machines(const JobSet& jobs);

/// Constant-time workload queries over a fixed job set, via a table indexed
/// by (distinct arrival, distinct deadline).
class WorkloadIndex {
public:
    explicit WorkloadIndex(const JobSet& jobs);

    Count workload(Time left, Time right) const;

    const std::vector<Time>& arrivals() const { return arrivals_; }
    const std::vector<Time>& deadlines() const { return deadlines_; }

private:
    std::vector<Time> arrivals_;
    std::vector<Time> deadlines_;
    // table_[i * deadlines_.size() + j] = #jobs with arrival >= arrivals_[i]
    // and deadline <= deadlines_[j].
    std::vector<Count> table_;
};

/// Incremental running maximum of the prefix density as arrivals are
/// revealed slot by slot. After observe(t, arrivals_at_t) the tracker
/// holds the maximum density of J(t) over all intervals.
///
/// Only intervals containing t can gain workload at slot t, so each step
/// costs O(t * distinct pending deadlines) integer operations.
class PrefixDensityTracker {
public:
    /// Slots must be observed in strictly increasing order; skipped slots
    /// are treated as having no arrivals.
    void observe(Time t, std::span<const Job> arrivals);

    Density current() const;
    const Interval& witness() const { return witness_; }

private:
    // cumulative_[s][r] = #jobs arriving at s with deadline <= r, for r <= row end;
    // beyond the row the last value applies.
    std::vector<std::vector<Count>> cumulative_;
    Time max_deadline_ = 0;
    Time last_slot_ = -1;
    Count best_work_ = 0;
    Time best_len_ = 1;
    Interval witness_{0, 1};
};

/// ϱ̂ of every prefix J(0), J(1), ..., J(horizon - 1).
std::vector<Density> prefix_max_densities(const JobSet& jobs, Time horizon);
std::vector<Density> prefix_max_densities(const ArrivalSequence& seq, Time horizon);

}  // namespace unitsched
