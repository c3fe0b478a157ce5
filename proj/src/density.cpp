#include <unitsched/density.hpp>

#include <algorithm>
#include <stdexcept>

namespace unitsched {

namespace {

// a/b > c/d for non-negative work and positive lengths.
bool denser(Count a, Time b, Count c, Time d) {
    return static_cast<__int128>(a) * d > static_cast<__int128>(c) * b;
}

Rational ratio(Count work, Time len) { return make_rational(work, len); }

}  // namespace

Rational workload(const JobSet& jobs, const Interval& iv) {
    Count total = 0;
    for (const auto& j : jobs.groups()) {
        if (iv.left <= j.arrival && j.deadline <= iv.right) total += j.count;
    }
    return make_rational(total);
}

Rational workload(const ArrivalSequence& seq, const Interval& iv) {
    Rational total = 0;
    if (iv.right < seq.deadline()) return total;
    for (Time t = iv.left; t < seq.deadline(); ++t) total += seq[t];
    return total;
}

Density density(const JobSet& jobs, const Interval& iv) {
    return workload(jobs, iv) / make_rational(iv.length());
}

Density density(const ArrivalSequence& seq, const Interval& iv) {
    return workload(seq, iv) / make_rational(iv.length());
}

WorkloadIndex::WorkloadIndex(const JobSet& jobs) {
    for (const auto& j : jobs.groups()) {
        arrivals_.push_back(j.arrival);
        deadlines_.push_back(j.deadline);
    }
    std::sort(arrivals_.begin(), arrivals_.end());
    arrivals_.erase(std::unique(arrivals_.begin(), arrivals_.end()), arrivals_.end());
    std::sort(deadlines_.begin(), deadlines_.end());
    deadlines_.erase(std::unique(deadlines_.begin(), deadlines_.end()), deadlines_.end());

    const std::size_t na = arrivals_.size();
    const std::size_t nd = deadlines_.size();
    table_.assign(na * nd, 0);
    for (const auto& j : jobs.groups()) {
        auto i = static_cast<std::size_t>(std::lower_bound(arrivals_.begin(), arrivals_.end(), j.arrival) - arrivals_.begin());
        auto k = static_cast<std::size_t>(std::lower_bound(deadlines_.begin(), deadlines_.end(), j.deadline) - deadlines_.begin());
        table_[i * nd + k] += j.count;
    }
    // Suffix over arrivals, prefix over deadlines.
    for (std::size_t i = na; i-- > 0;) {
        for (std::size_t k = 0; k < nd; ++k) {
            Count v = table_[i * nd + k];
            if (k > 0) v += table_[i * nd + k - 1];
            if (i + 1 < na) v += table_[(i + 1) * nd + k];
            if (k > 0 && i + 1 < na) v -= table_[(i + 1) * nd + k - 1];
            table_[i * nd + k] = v;
        }
    }
}

Count WorkloadIndex::workload(Time left, Time right) const {
    auto i = static_cast<std::size_t>(std::lower_bound(arrivals_.begin(), arrivals_.end(), left) - arrivals_.begin());
    auto k = std::upper_bound(deadlines_.begin(), deadlines_.end(), right) - deadlines_.begin();
    if (i >= arrivals_.size() || k == 0) return 0;
    return table_[i * deadlines_.size() + static_cast<std::size_t>(k - 1)];
}

DensityWitness max_density_at(const JobSet& jobs, Time t) {
    if (t < 0) throw std::invalid_argument("slot must be non-negative");
    WorkloadIndex index(jobs);

    std::vector<Time> lefts;
    for (Time a : index.arrivals()) {
        if (a < t) lefts.push_back(a);
    }
    lefts.push_back(t);
    std::vector<Time> rights{t + 1};
    for (Time d : index.deadlines()) {
        if (d > t + 1) rights.push_back(d);
    }

    // Strict improvement over ascending lefts and rights keeps the witness
    // with the smallest left end, then the smallest right end. A zero
    // maximum keeps the [t, t + 1) default.
    Count best_work = 0;
    Time best_len = 1;
    Interval best{t, t + 1};
    for (Time l : lefts) {
        for (Time r : rights) {
            Count w = index.workload(l, r);
            if (denser(w, r - l, best_work, best_len)) {
                best_work = w;
                best_len = r - l;
                best = Interval(l, r);
            }
        }
    }
    return {ratio(best_work, best_len), best};
}

DensityWitness max_density_at(const ArrivalSequence& seq, Time t) {
    if (t < 0) throw std::invalid_argument("slot must be non-negative");
    const Time d = seq.deadline();
    const Time right = std::max(d, t + 1);
    const Time last_left = std::min(t, d - 1);

    std::vector<Rational> suffix(static_cast<std::size_t>(d) + 1, Rational(0));
    for (Time i = d; i-- > 0;) suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + seq[i];

    Rational best = 0;
    Interval witness{t, t + 1};
    for (Time l = 0; l <= last_left; ++l) {
        Rational v = suffix[static_cast<std::size_t>(l)] / make_rational(right - l);
        if (v > best) {
            best = v;
            witness = Interval(l, right);
        }
    }
    return {best, witness};
}

DensityWitness max_density(const JobSet& jobs) {
    WorkloadIndex index(jobs);
    Count best_work = 0;
    Time best_len = 1;
    Interval best{0, 1};
    for (Time l : index.arrivals()) {
        for (Time r : index.deadlines()) {
            if (r <= l) continue;
            Count w = index.workload(l, r);
            if (denser(w, r - l, best_work, best_len)) {
                best_work = w;
                best_len = r - l;
                best = Interval(l, r);
            }
        }
    }
    return {ratio(best_work, best_len), best};
}

DensityWitness max_density(const ArrivalSequence& seq) {
    const Time d = seq.deadline();
    Rational suffix = 0;
    Rational best = 0;
    Interval witness{0, 1};
    // Scan right to left; ties resolve toward the smaller left end.
    for (Time l = d; l-- > 0;) {
        suffix += seq[l];
        Rational v = suffix / make_rational(d - l);
        if (v > 0 && v >= best) {
            best = v;
            witness = Interval(l, d);
        }
    }
    return {best, witness};
}

Count opt_machines(const JobSet& jobs) {
    if (jobs.empty()) return 0;
    return ceil_to_int64(max_density(jobs).value);
}

void PrefixDensityTracker::observe(Time t, std::span<const Job> arrivals) {
    if (t <= last_slot_) throw std::invalid_argument("slots must be observed in increasing order");
    last_slot_ = t;
    cumulative_.resize(static_cast<std::size_t>(t) + 1);
    if (arrivals.empty()) return;

    Time min_new = arrivals.front().deadline;
    Time max_new = arrivals.front().deadline;
    for (const auto& j : arrivals) {
        if (j.arrival != t) throw std::invalid_argument("arrival batch does not belong to slot");
        min_new = std::min(min_new, j.deadline);
        max_new = std::max(max_new, j.deadline);
    }
    auto& row = cumulative_[static_cast<std::size_t>(t)];
    row.assign(static_cast<std::size_t>(max_new) + 1, 0);
    for (const auto& j : arrivals) row[static_cast<std::size_t>(j.deadline)] += j.count;
    for (std::size_t r = 1; r < row.size(); ++r) row[r] += row[r - 1];
    max_deadline_ = std::max(max_deadline_, max_new);

    for (Time r = min_new; r <= max_deadline_; ++r) {
        Count work = 0;
        for (Time l = t; l >= 0; --l) {
            const auto& cells = cumulative_[static_cast<std::size_t>(l)];
            if (!cells.empty()) {
                work += r < static_cast<Time>(cells.size()) ? cells[static_cast<std::size_t>(r)] : cells.back();
            }
            if (denser(work, r - l, best_work_, best_len_)) {
                best_work_ = work;
                best_len_ = r - l;
                witness_ = Interval(l, r);
            }
        }
    }
}

Density PrefixDensityTracker::current() const { return ratio(best_work_, best_len_); }

std::vector<Density> prefix_max_densities(const JobSet& jobs, Time horizon) {
    std::vector<Density> out;
    out.reserve(static_cast<std::size_t>(std::max<Time>(horizon, 0)));
    PrefixDensityTracker tracker;
    for (Time t = 0; t < horizon; ++t) {
        tracker.observe(t, jobs.arrivals_at(t));
        out.push_back(tracker.current());
    }
    return out;
}

std::vector<Density> prefix_max_densities(const ArrivalSequence& seq, Time horizon) {
    const Time d = seq.deadline();
    std::vector<Density> out;
    out.reserve(static_cast<std::size_t>(std::max<Time>(horizon, 0)));
    // For the prefix ending at t, an interval [l, d) holds sigma[l..t].
    std::vector<Rational> prefix_sum(static_cast<std::size_t>(d) + 1, Rational(0));
    for (Time i = 0; i < d; ++i) prefix_sum[static_cast<std::size_t>(i) + 1] = prefix_sum[static_cast<std::size_t>(i)] + seq[i];
    for (Time t = 0; t < horizon; ++t) {
        const Time last = std::min(t, d - 1);
        Rational best = 0;
        for (Time l = 0; l <= last; ++l) {
            Rational v = (prefix_sum[static_cast<std::size_t>(last) + 1] - prefix_sum[static_cast<std::size_t>(l)]) /
                         make_rational(d - l);
            if (v > best) best = v;
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace unitsched
