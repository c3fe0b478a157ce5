#include <unitsched/job.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace unitsched {

void Job::validate() const {
    if (arrival < 0) {
        throw std::invalid_argument("job arrival must be non-negative, got " + std::to_string(arrival));
    }
    if (deadline < arrival + 1) {
        throw std::invalid_argument("job deadline " + std::to_string(deadline) +
                                    " leaves no slot after arrival " + std::to_string(arrival));
    }
    if (count < 1) {
        throw std::invalid_argument("job multiplicity must be positive, got " + std::to_string(count));
    }
}

Interval::Interval(Time l, Time r) : left(l), right(r) {
    if (l < 0 || r <= l) {
        throw std::invalid_argument("invalid interval [" + std::to_string(l) + ", " + std::to_string(r) + ")");
    }
}

JobSet::JobSet(std::vector<Job> jobs) {
    for (const auto& j : jobs) j.validate();
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        return a.arrival != b.arrival ? a.arrival < b.arrival : a.deadline < b.deadline;
    });
    for (const auto& j : jobs) {
        if (!groups_.empty() && groups_.back().arrival == j.arrival && groups_.back().deadline == j.deadline) {
            groups_.back().count += j.count;
        } else {
            groups_.push_back(j);
        }
        total_ += j.count;
        horizon_ = std::max(horizon_, j.deadline);
    }
}

std::span<const Job> JobSet::arrivals_at(Time t) const {
    auto lo = std::lower_bound(groups_.begin(), groups_.end(), t,
                               [](const Job& j, Time v) { return j.arrival < v; });
    auto hi = std::upper_bound(lo, groups_.end(), t,
                               [](Time v, const Job& j) { return v < j.arrival; });
    return {lo, hi};
}

bool JobSet::has_universal_deadline() const {
    return std::all_of(groups_.begin(), groups_.end(),
                       [&](const Job& j) { return j.deadline == groups_.front().deadline; });
}

ArrivalSequence::ArrivalSequence(Time deadline, std::vector<Rational> sigma)
    : deadline_(deadline), sigma_(std::move(sigma)) {
    if (deadline_ < 1) {
        throw std::invalid_argument("universal deadline must be positive, got " + std::to_string(deadline_));
    }
    if (static_cast<Time>(sigma_.size()) != deadline_) {
        throw std::invalid_argument("arrival sequence has " + std::to_string(sigma_.size()) +
                                    " weights for deadline " + std::to_string(deadline_));
    }
    for (const auto& w : sigma_) {
        if (w < 0) throw std::invalid_argument("arrival weights must be non-negative");
    }
}

Rational ArrivalSequence::total_workload() const {
    Rational total = 0;
    for (const auto& w : sigma_) total += w;
    return total;
}

bool ArrivalSequence::is_integral() const {
    return std::all_of(sigma_.begin(), sigma_.end(), [](const Rational& w) { return is_integer(w); });
}

bool ArrivalSequence::is_non_decreasing() const {
    return std::is_sorted(sigma_.begin(), sigma_.end());
}

JobSet ArrivalSequence::to_job_set() const {
    std::vector<Job> jobs;
    for (Time t = 0; t < deadline_; ++t) {
        const auto& w = (*this)[t];
        if (!is_integer(w)) {
            throw std::domain_error("slot " + std::to_string(t) + " carries fractional workload " + to_string(w));
        }
        if (w > 0) jobs.push_back({t, deadline_, to_int64(w.get_num())});
    }
    return JobSet(std::move(jobs));
}

JobSet prefix(const JobSet& jobs, Time t) {
    std::vector<Job> kept;
    for (const auto& j : jobs.groups()) {
        if (j.arrival > t) break;
        kept.push_back(j);
    }
    return JobSet(std::move(kept));
}

ArrivalSequence prefix(const ArrivalSequence& seq, Time t) {
    std::vector<Rational> sigma(seq.sigma().begin(), seq.sigma().end());
    for (Time i = std::max<Time>(t + 1, 0); i < seq.deadline(); ++i) sigma[static_cast<std::size_t>(i)] = 0;
    return ArrivalSequence(seq.deadline(), std::move(sigma));
}

}  // namespace unitsched
