#include <unitsched/fuzz.hpp>

#include <unitsched/density.hpp>
#include <unitsched/edf.hpp>
#include <unitsched/policy.hpp>
#include <unitsched/potential.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace unitsched::fuzz {

namespace {

Time uniform(Rng& rng, Time lo, Time hi) { return std::uniform_int_distribution<Time>(lo, hi)(rng); }

std::string describe(const JobSet& jobs) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& j : jobs.groups()) {
        out << (first ? "" : ", ") << '(' << j.arrival << ',' << j.deadline << ")x" << j.count;
        first = false;
    }
    out << '}';
    return out.str();
}

const std::vector<Rational>& potential_factors() {
    static const std::vector<Rational> factors{Rational(1), Rational(26, 5), Rational(8)};
    return factors;
}

using Outcome = std::optional<std::string>;

Outcome check_interval_equivalence(const JobSet& jobs, Rng& rng) {
    const Time h = std::max<Time>(jobs.horizon(), 1);
    const Count cap = 2 * std::max<Count>(opt_machines(jobs), 1);
    BudgetTrace b;
    for (Time t = 0; t < h; ++t) b.budgets.push_back(uniform(rng, 0, cap));
    const bool sim_ok = simulate_edf(jobs, b).miss_count == 0;
    const auto verdict = feasible_by_inequalities(jobs, b);
    if (sim_ok != verdict.feasible) {
        return "EDF " + std::string(sim_ok ? "finishes every job" : "misses") + " but inequalities say " +
               (verdict.feasible ? "feasible" : "infeasible");
    }
    return std::nullopt;
}

Outcome check_edf_conservation(const JobSet& jobs, Rng& rng) {
    const Time h = std::max<Time>(jobs.horizon(), 1);
    BudgetTrace b;
    for (Time t = 0; t < h; ++t) b.budgets.push_back(uniform(rng, 0, 3));
    const auto trace = simulate_edf(jobs, b);
    if (trace.miss_count + trace.total_executed() != jobs.total_workload()) {
        return "misses + executed != workload";
    }
    for (Time t = 0; t < h; ++t) {
        if (trace.executed[static_cast<std::size_t>(t)] > b.at(t)) return "slot exceeds its budget";
    }
    // Raising one slot's budget must not add misses.
    BudgetTrace raised = b;
    raised.budgets[static_cast<std::size_t>(uniform(rng, 0, h - 1))] += 1;
    if (simulate_edf(jobs, raised).miss_count > trace.miss_count) return "raising a budget increased misses";
    return std::nullopt;
}

Outcome check_optimum(const JobSet& jobs, bool inject_fault) {
    const Count by_density = opt_machines(jobs);
    const Count by_search = opt_bruteforce(jobs);
    if (by_density != by_search) {
        return "density optimum " + std::to_string(by_density) + " != brute-force optimum " + std::to_string(by_search);
    }
    if (inject_fault && !jobs.empty()) {
        const auto trace = simulate_edf(jobs, BudgetTrace::constant(jobs.horizon(), by_density - 1));
        if (trace.miss_count > 0) {
            return "injected fault: budget " + std::to_string(by_density - 1) + " misses " +
                   std::to_string(trace.miss_count) + " job(s)";
        }
    }
    return std::nullopt;
}

Outcome check_mediant(Rng& rng) {
    for (int i = 0; i < 8; ++i) {
        Rational p(uniform(rng, 0, 50), uniform(rng, 1, 9));
        Rational q(uniform(rng, 1, 50), uniform(rng, 1, 9));
        Rational r(uniform(rng, 0, 50), uniform(rng, 1, 9));
        Rational s(uniform(rng, 1, 50), uniform(rng, 1, 9));
        p.canonicalize();
        q.canonicalize();
        r.canonicalize();
        s.canonicalize();
        if (p / q >= r / s && (p + r) / (q + s) < r / s) {
            return "mediant fails for " + to_string(p) + "/" + to_string(q) + " and " + to_string(r) + "/" + to_string(s);
        }
    }
    return std::nullopt;
}

Outcome check_cut_and_nesting(const JobSet& jobs, Rng& rng, bool nesting) {
    const Time d = uniform(rng, 1, std::max<Time>(jobs.horizon(), 1));
    const ArrivalSequence seq = reduce_equal_deadline(jobs, d);

    auto cut_holds = [&](const ArrivalSequence& s, Time t) -> Outcome {
        const Time left = max_density_at(s, t).interval.left;
        for (Time cut = left + 1; cut <= t; ++cut) {
            Rational before = 0;
            for (Time i = left; i < cut; ++i) before += s[i];
            Rational after = 0;
            for (Time i = cut; i < d; ++i) after += s[i];
            if (before / (cut - left) < after / (d - cut)) {
                return "cut at " + std::to_string(cut) + " beats defining interval of slot " + std::to_string(t) +
                       " (d = " + std::to_string(d) + ")";
            }
        }
        return std::nullopt;
    };

    Time previous_left = 0;
    for (Time t = 0; t < d; ++t) {
        const ArrivalSequence pre = prefix(seq, t);
        if (!nesting) {
            if (auto bad = cut_holds(seq, t)) return bad;
            if (auto bad = cut_holds(pre, t)) return bad;
        } else {
            const Time left = max_density_at(pre, t).interval.left;
            if (left < previous_left) {
                return "defining interval of prefix " + std::to_string(t) + " starts at " + std::to_string(left) +
                       ", before the previous start " + std::to_string(previous_left) + " (d = " + std::to_string(d) + ")";
            }
            previous_left = left;
        }
    }
    return std::nullopt;
}

Outcome check_equal_deadline(const JobSet& jobs, Rng& rng) {
    if (jobs.empty()) return std::nullopt;
    const Time d = uniform(rng, 1, jobs.horizon());
    const Time t = uniform(rng, 0, d - 1);
    const ArrivalSequence reduced = reduce_equal_deadline(jobs, d);
    for (const auto& c : potential_factors()) {
        const auto original = potential(jobs, c, t, d);
        const auto after = potential(reduced, c, t, d);
        if (after.value > original.value) {
            return "equal-deadline reduction raised Phi_" + to_string(c) + " on [" + std::to_string(t) + ", " +
                   std::to_string(d) + "): " + to_string(original.value) + " -> " + to_string(after.value);
        }
    }
    return std::nullopt;
}

Outcome check_averaging(const JobSet& jobs, Rng& rng) {
    if (jobs.empty()) return std::nullopt;
    const Time d = uniform(rng, 1, jobs.horizon());
    ArrivalSequence current = reduce_equal_deadline(jobs, d);
    const Rational total = current.total_workload();
    std::size_t steps = 0;
    while (auto step = next_reduction_step(current)) {
        if (++steps > static_cast<std::size_t>(d * d)) return "reduction does not terminate";
        ArrivalSequence next = apply_step(current, *step);
        if (next.total_workload() != total) return "averaging step changed the total workload";
        const auto before = prefix_max_densities(current, d);
        const auto after = prefix_max_densities(next, d);
        for (Time t = 0; t < d; ++t) {
            if (after[static_cast<std::size_t>(t)] > before[static_cast<std::size_t>(t)]) {
                return "averaging step (k=" + std::to_string(step->k) + ", m=" + std::to_string(step->m) +
                       ") raised the prefix density at " + std::to_string(t);
            }
        }
        for (const auto& c : potential_factors()) {
            if (potential(next, c, 0, d).value > potential(current, c, 0, d).value) {
                return "averaging step raised Phi_" + to_string(c);
            }
        }
        current = std::move(next);
    }
    if (!current.is_non_decreasing()) return "reduction ended with a descent";
    return std::nullopt;
}

Outcome check_pvd(const JobSet& jobs) {
    const Rational c(26, 5);
    PackingViaDensity policy(c);
    const auto report = run_online(jobs, policy);
    if (report.misses != 0) return "packing-via-density(26/5) missed " + std::to_string(report.misses) + " job(s)";
    const Count ceiling = ceil_to_int64(c * max_density(jobs).value);
    const auto& budgets = report.budget_curve.budgets;
    for (std::size_t t = 0; t < budgets.size(); ++t) {
        if (t > 0 && budgets[t] < budgets[t - 1]) return "budget curve decreased at slot " + std::to_string(t);
        if (budgets[t] > ceiling) return "budget exceeds ceil(c * max density of the whole instance)";
    }
    return std::nullopt;
}

Outcome check_phi_chain(const JobSet& jobs, Rng& rng) {
    const Rational c(26, 5);
    const auto lowest = min_potential(jobs, c);
    if (lowest.value < 0) {
        return "Phi_26/5 negative on [" + std::to_string(lowest.interval->left) + ", " +
               std::to_string(lowest.interval->right) + "): " + to_string(lowest.value);
    }
    if (jobs.empty()) return std::nullopt;
    const Time d = uniform(rng, 1, jobs.horizon());
    const auto up = reduce_nondecreasing(reduce_equal_deadline(jobs, d)).result;
    for (const auto& factor : {Rational(8), c}) {
        if (!check_phi_nonneg(up, factor).non_negative) {
            return "Phi_" + to_string(factor) + " negative on the non-decreasing reduction (d = " + std::to_string(d) + ")";
        }
    }
    if (d >= 2 && up[d - 1] > 0 && !(8 * up[d - 1] - (up[d - 1] + up[d - 2]) > 0)) {
        return "tail cover inequality fails";
    }
    return std::nullopt;
}

}  // namespace

JobSet random_instance(Rng& rng, Time horizon_max, Count workload_max) {
    if (horizon_max < 1) throw std::invalid_argument("horizon bound must be at least 1");
    if (workload_max < 0) throw std::invalid_argument("workload bound must be non-negative");
    const Time h = uniform(rng, 1, horizon_max);
    Count remaining = uniform(rng, 0, workload_max);
    const Count groups = uniform(rng, 1, std::max<Count>(1, std::min<Count>(3 * h, remaining)));
    const double mean = std::max(1.0, static_cast<double>(remaining) / static_cast<double>(groups));
    std::geometric_distribution<Count> extra(1.0 / mean);

    std::vector<Job> jobs;
    for (Count g = 0; g < groups && remaining > 0; ++g) {
        const Time a = uniform(rng, 0, h - 1);
        const Time d = uniform(rng, a + 1, h);
        const Count n = std::min(remaining, 1 + extra(rng));
        jobs.push_back({a, d, n});
        remaining -= n;
    }
    return JobSet(std::move(jobs));
}

const std::vector<std::string>& all_checks() {
    static const std::vector<std::string> names{
        "interval-equivalence", "edf-conservation", "optimum", "mediant",   "cut",
        "nesting",            "equal-deadline-reduction", "averaging-reduction", "pvd-feasible", "phi-chain",
    };
    return names;
}

std::optional<std::string> run_check(const std::string& check, const JobSet& jobs, Rng& rng, bool inject_fault) {
    if (check == "interval-equivalence") return check_interval_equivalence(jobs, rng);
    if (check == "edf-conservation") return check_edf_conservation(jobs, rng);
    if (check == "optimum") return check_optimum(jobs, inject_fault);
    if (check == "mediant") return check_mediant(rng);
    if (check == "cut") return check_cut_and_nesting(jobs, rng, false);
    if (check == "nesting") return check_cut_and_nesting(jobs, rng, true);
    if (check == "equal-deadline-reduction") return check_equal_deadline(jobs, rng);
    if (check == "averaging-reduction") return check_averaging(jobs, rng);
    if (check == "pvd-feasible") return check_pvd(jobs);
    if (check == "phi-chain") return check_phi_chain(jobs, rng);
    throw std::invalid_argument("unknown fuzz check '" + check + "'");
}

JobSet minimize(const JobSet& jobs, const std::function<bool(const JobSet&)>& still_fails) {
    std::vector<Job> current(jobs.groups().begin(), jobs.groups().end());
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < current.size(); ++i) {
            auto candidate = current;
            candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
            if (still_fails(JobSet(candidate))) {
                current = std::move(candidate);
                progress = true;
                break;
            }
            if (current[i].count > 1) {
                candidate = current;
                candidate[i].count = current[i].count / 2;
                if (still_fails(JobSet(candidate))) {
                    current = std::move(candidate);
                    progress = true;
                    break;
                }
            }
        }
    }
    return JobSet(std::move(current));
}

Summary run(const Config& config) {
    const auto& checks = config.checks.empty() ? all_checks() : config.checks;
    for (const auto& name : checks) {
        if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end()) {
            throw std::invalid_argument("unknown fuzz check '" + name + "'");
        }
    }
    Summary summary;
    for (const auto& name : checks) summary.tallies[name];

    Rng instances(config.seed);
    for (std::uint64_t i = 0; i < config.count; ++i) {
        const JobSet jobs = random_instance(instances, config.horizon_max, config.workload_max);
        for (std::size_t c = 0; c < checks.size(); ++c) {
            const auto seeded = [&] {
                std::seed_seq seq{config.seed, i, static_cast<std::uint64_t>(c)};
                return Rng(seq);
            };
            Rng rng = seeded();
            auto outcome = run_check(checks[c], jobs, rng, config.inject_fault);
            auto& tally = summary.tallies[checks[c]];
            if (!outcome) {
                ++tally.passed;
                continue;
            }
            ++tally.failed;
            auto fails = [&](const JobSet& candidate) {
                Rng replay = seeded();
                return run_check(checks[c], candidate, replay, config.inject_fault).has_value();
            };
            Failure failure;
            failure.check = checks[c];
            failure.case_index = i;
            failure.original = jobs;
            failure.minimized = minimize(jobs, fails);
            Rng replay = seeded();
            auto detail = run_check(checks[c], failure.minimized, replay, config.inject_fault);
            failure.detail = (detail ? *detail : *outcome) + " on " + describe(failure.minimized);
            summary.failure = std::move(failure);
            return summary;
        }
    }
    return summary;
}

}  // namespace unitsched::fuzz
