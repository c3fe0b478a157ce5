#pragma once

#include <unitsched/job.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace unitsched::fuzz {

using Rng = std::mt19937_64;

/// Random instance: horizon H uniform in [1, horizon_max], a workload target
/// uniform in [0, workload_max], arrivals uniform over [0, H), deadlines
/// uniform over (arrival, H], multiplicities 1 + geometric.
JobSet random_instance(Rng& rng, Time horizon_max, Count workload_max);

/// Names of all invariant checks, in execution order.
const std::vector<std::string>& all_checks();

struct Config {
    std::uint64_t count = 1000;
    std::uint64_t seed = 1;
    Time horizon_max = 12;
    Count workload_max = 20;
    std::vector<std::string> checks;  ///< empty selects every check
    /// Test hook: the optimum check additionally demands that EDF succeeds
    /// with one machine fewer than the optimum, which must fail.
    bool inject_fault = false;
};

struct Tally {
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
};

struct Failure {
    std::string check;
    std::uint64_t case_index = 0;
    JobSet original;
    JobSet minimized;
    std::string detail;  ///< describes the violation on the minimized instance
};

struct Summary {
    std::map<std::string, Tally> tallies;
    std::optional<Failure> failure;  ///< first violation; the campaign stops there

    bool ok() const { return !failure; }
};

/// Runs one named check; returns a description of the violation, if any.
/// Auxiliary randomness (budgets, cut points) is drawn from `rng`.
std::optional<std::string> run_check(const std::string& check, const JobSet& jobs, Rng& rng, bool inject_fault);

/// Runs the campaign. Every check sees the same instances; per-check
/// randomness is seeded from (seed, case, check) so a failure replays
/// exactly during minimisation.
Summary run(const Config& config);

/// Greedily removes groups and lowers counts while `still_fails` holds.
JobSet minimize(const JobSet& jobs, const std::function<bool(const JobSet&)>& still_fails);

}  // namespace unitsched::fuzz
