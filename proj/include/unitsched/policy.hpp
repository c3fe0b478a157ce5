#pragma once

#include <unitsched/density.hpp>
#include <unitsched/edf.hpp>
#include <unitsched/job.hpp>
#include <unitsched/rational.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace unitsched {

/// An online machine-budget rule.
///
/// The runner calls on_slot once per slot in increasing order, handing over
/// exactly the jobs that arrive in that slot. The returned budget may depend
/// only on what has been handed over so far. A policy object serves a single
/// run.
class OnlinePolicy {
public:
    virtual ~OnlinePolicy() = default;

    virtual std::string name() const = 0;
    virtual Count on_slot(Time t, std::span<const Job> arrivals) = 0;
};

using PolicyFactory = std::function<std::unique_ptr<OnlinePolicy>()>;

/// packing-via-density(c): budget ceil(c * running max prefix density).
class PackingViaDensity final : public OnlinePolicy {
public:
    explicit PackingViaDensity(Rational c);

    std::string name() const override;
    Count on_slot(Time t, std::span<const Job> arrivals) override;

    const Rational& factor() const { return c_; }
    Density current_density() const { return tracker_.current(); }

private:
    Rational c_;
    PrefixDensityTracker tracker_;
};

/// The earlier universal-deadline rule: budget 2 * ceil(max density over
/// intervals containing t). Not a running maximum. Throws
/// std::domain_error as soon as two distinct deadlines are observed.
class ShiYePolicy final : public OnlinePolicy {
public:
    std::string name() const override { return "shi-ye"; }
    Count on_slot(Time t, std::span<const Job> arrivals) override;

    /// The density term of the last emitted budget.
    const Density& last_density() const { return last_; }

private:
    std::optional<Time> deadline_;
    std::vector<Count> arrived_;  // work arrived at each slot
    Density last_;
};

/// Reference policy (not from the original analysis): budget
/// floor(c * running max prefix density). Used to witness lower bounds.
class CappedDensityPolicy final : public OnlinePolicy {
public:
    explicit CappedDensityPolicy(Rational c);

    std::string name() const override;
    Count on_slot(Time t, std::span<const Job> arrivals) override;

private:
    Rational c_;
    PrefixDensityTracker tracker_;
};

/// Parses `pvd:<c>`, `shi-ye`, or `cap:<c>`; c is an exact rational string.
/// Throws std::invalid_argument on anything else.
PolicyFactory parse_policy(const std::string& spec);

struct RunReport {
    std::string policy;
    BudgetTrace budget_curve;
    ScheduleTrace trace;
    std::vector<Count> opt_prefix;                  ///< opt_machines(J(t))
    std::vector<std::optional<Rational>> ratio_profile;  ///< budget / opt_prefix where opt_prefix >= 1
    std::optional<Rational> peak_ratio;
    Count misses = 0;
    Count total_budget = 0;
    Count workload = 0;
};

/// Budgets the policy emits for slots 0..horizon-1 when fed `jobs` online.
BudgetTrace budget_curve(const JobSet& jobs, OnlinePolicy& policy, Time horizon);

/// Feeds arrivals slot by slot, collects budgets, runs EDF under them, and
/// profiles budget against the optimum of each prefix.
RunReport run_online(const JobSet& jobs, OnlinePolicy& policy);

}  // namespace unitsched
