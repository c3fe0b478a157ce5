#include <unitsched/policy.hpp>

#include <algorithm>
#include <stdexcept>

namespace unitsched {

PackingViaDensity::PackingViaDensity(Rational c) : c_(std::move(c)) {
    if (c_ <= 0) throw std::invalid_argument("packing factor must be positive");
}

std::string PackingViaDensity::name() const { return "pvd:" + to_string(c_); }

Count PackingViaDensity::on_slot(Time t, std::span<const Job> arrivals) {
    tracker_.observe(t, arrivals);
    return ceil_to_int64(c_ * tracker_.current());
}

Count ShiYePolicy::on_slot(Time t, std::span<const Job> arrivals) {
    arrived_.resize(static_cast<std::size_t>(t) + 1, 0);
    for (const auto& j : arrivals) {
        if (deadline_ && *deadline_ != j.deadline) {
            throw std::domain_error("shi-ye policy needs a universal deadline; saw deadlines " +
                                    std::to_string(*deadline_) + " and " + std::to_string(j.deadline));
        }
        deadline_ = j.deadline;
        arrived_[static_cast<std::size_t>(t)] += j.count;
    }
    if (!deadline_) {
        last_ = 0;
        return 0;
    }
    // Intervals containing t: [l, max(d, t + 1)) for l <= t, holding the work
    // that arrived in l..t (when d <= t everything arrived is overdue anyway).
    const Time right = std::max(*deadline_, t + 1);
    Count work = 0;
    Count best_work = 0;
    Time best_len = 1;
    for (Time l = t; l >= 0; --l) {
        work += arrived_[static_cast<std::size_t>(l)];
        if (static_cast<__int128>(work) * best_len > static_cast<__int128>(best_work) * (right - l)) {
            best_work = work;
            best_len = right - l;
        }
    }
    last_ = make_rational(best_work, best_len);
    return 2 * ceil_to_int64(last_);
}

CappedDensityPolicy::CappedDensityPolicy(Rational c) : c_(std::move(c)) {
    if (c_ <= 0) throw std::invalid_argument("cap factor must be positive");
}

std::string CappedDensityPolicy::name() const { return "cap:" + to_string(c_); }

Count CappedDensityPolicy::on_slot(Time t, std::span<const Job> arrivals) {
    tracker_.observe(t, arrivals);
    return floor_to_int64(c_ * tracker_.current());
}

PolicyFactory parse_policy(const std::string& spec) {
    if (spec == "shi-ye") {
        return [] { return std::make_unique<ShiYePolicy>(); };
    }
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        auto kind = spec.substr(0, colon);
        Rational c = parse_rational(spec.substr(colon + 1));
        if (c <= 0) throw std::invalid_argument("policy factor must be positive: " + spec);
        if (kind == "pvd") return [c] { return std::make_unique<PackingViaDensity>(c); };
        if (kind == "cap") return [c] { return std::make_unique<CappedDensityPolicy>(c); };
    }
    throw std::invalid_argument("unknown policy '" + spec + "' (expected pvd:<c>, shi-ye, or cap:<c>)");
}

BudgetTrace budget_curve(const JobSet& jobs, OnlinePolicy& policy, Time horizon) {
    BudgetTrace curve;
    curve.budgets.reserve(static_cast<std::size_t>(std::max<Time>(horizon, 0)));
    for (Time t = 0; t < horizon; ++t) {
        Count b = policy.on_slot(t, jobs.arrivals_at(t));
        if (b < 0) throw std::logic_error(policy.name() + " emitted a negative budget");
        curve.budgets.push_back(b);
    }
    return curve;
}

RunReport run_online(const JobSet& jobs, OnlinePolicy& policy) {
    RunReport report;
    report.policy = policy.name();
    const Time horizon = jobs.horizon();
    report.budget_curve = budget_curve(jobs, policy, horizon);
    report.trace = simulate_edf(jobs, report.budget_curve);
    report.misses = report.trace.miss_count;
    report.workload = jobs.total_workload();

    PrefixDensityTracker opt;
    for (Time t = 0; t < horizon; ++t) {
        opt.observe(t, jobs.arrivals_at(t));
        Count machines = ceil_to_int64(opt.current());
        Count b = report.budget_curve.at(t);
        report.total_budget += b;
        report.opt_prefix.push_back(machines);
        if (machines >= 1) {
            Rational r = make_rational(b, machines);
            if (!report.peak_ratio || r > *report.peak_ratio) report.peak_ratio = r;
            report.ratio_profile.emplace_back(std::move(r));
        } else {
            report.ratio_profile.emplace_back(std::nullopt);
        }
    }
    return report;
}

}  // namespace unitsched
