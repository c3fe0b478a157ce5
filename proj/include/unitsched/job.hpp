#pragma once

#include <unitsched/rational.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace unitsched {

using Time = std::int64_t;
using Count = std::int64_t;

/// A group of `count` identical unit jobs that may run in slots
/// arrival, arrival + 1, ..., deadline - 1.
struct Job {
    Time arrival = 0;
    Time deadline = 1;
    Count count = 1;

    /// Throws std::invalid_argument unless arrival >= 0, deadline > arrival
    /// and count >= 1.
    void validate() const;

    friend bool operator==(const Job&, const Job&) = default;
};

/// Half-open slot interval [left, right).
struct Interval {
    Time left = 0;
    Time right = 1;

    Interval() = default;
    Interval(Time l, Time r);

    Time length() const { return right - left; }
    bool contains(Time t) const { return left <= t && t < right; }

    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Multiset of unit jobs, stored as groups merged by (arrival, deadline) and
/// sorted by arrival, then deadline.
class JobSet {
public:
    JobSet() = default;
    explicit JobSet(std::vector<Job> jobs);

    std::span<const Job> groups() const { return groups_; }
    bool empty() const { return groups_.empty(); }
    Count total_workload() const { return total_; }

    /// Largest deadline, or 0 for the empty set.
    Time horizon() const { return horizon_; }

    /// Groups arriving exactly at slot t.
    std::span<const Job> arrivals_at(Time t) const;

    /// True when every job shares one deadline (vacuously true when empty).
    bool has_universal_deadline() const;

    friend bool operator==(const JobSet&, const JobSet&) = default;

private:
    std::vector<Job> groups_;
    Count total_ = 0;
    Time horizon_ = 0;
};

/// Universal-deadline instance (d, sigma): sigma[t] units of work arrive at
/// slot t, all due at d. Weights are exact rationals so that averaging
/// reductions stay closed over this type.
class ArrivalSequence {
public:
    ArrivalSequence() = default;
    ArrivalSequence(Time deadline, std::vector<Rational> sigma);

    Time deadline() const { return deadline_; }
    std::span<const Rational> sigma() const { return sigma_; }
    const Rational& operator[](Time t) const { return sigma_[static_cast<std::size_t>(t)]; }
    Rational total_workload() const;

    bool is_integral() const;
    bool is_non_decreasing() const;

    /// Expands integral weights into unit-job groups (zero slots are skipped).
    /// Throws std::domain_error when some weight is fractional.
    JobSet to_job_set() const;

    friend bool operator==(const ArrivalSequence&, const ArrivalSequence&) = default;

private:
    Time deadline_ = 0;
    std::vector<Rational> sigma_;
};

/// Jobs that have arrived by slot t (arrival <= t). Negative t yields the empty set.
JobSet prefix(const JobSet& jobs, Time t);

/// Same as above for a universal-deadline instance: weights after t are zeroed.
ArrivalSequence prefix(const ArrivalSequence& seq, Time t);

}  // namespace unitsched
