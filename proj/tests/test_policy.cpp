#include "oracles.hpp"

#include <unitsched/adversary.hpp>
#include <unitsched/density.hpp>
#include <unitsched/policy.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace unitsched;

namespace {

std::vector<Count> budgets(const JobSet& jobs, OnlinePolicy& policy, Time horizon) {
    return budget_curve(jobs, policy, horizon).budgets;
}

}  // namespace

TEST(PackingViaDensity, UniformInstance) {
    for (Time d : {1, 7, 20}) {
        PackingViaDensity pvd(make_rational(26, 5));
        const auto b = budgets(gen_uniform(d).to_job_set(), pvd, d);
        for (Time t = 0; t < d; ++t) {
            EXPECT_EQ(b[static_cast<std::size_t>(t)], ceil_to_int64(make_rational(26, 5) * (t + 1)));
        }
    }
}

TEST(PackingViaDensity, SparseInstance) {
    PackingViaDensity pvd(1);
    EXPECT_EQ(budgets(JobSet({{0, 4, 2}}), pvd, 4), (std::vector<Count>{1, 1, 1, 1}));
}

TEST(PackingViaDensity, Names) {
    EXPECT_EQ(PackingViaDensity(make_rational(26, 5)).name(), "pvd:26/5");
    EXPECT_EQ(CappedDensityPolicy(make_rational(209, 100)).name(), "cap:209/100");
    EXPECT_EQ(ShiYePolicy().name(), "shi-ye");
}

TEST(PackingViaDensity, UniformRunsClean) {
    PackingViaDensity pvd(make_rational(26, 5));
    const auto report = run_online(gen_uniform(20).to_job_set(), pvd);
    EXPECT_EQ(report.misses, 0);
    EXPECT_EQ(report.workload, 400);
}

TEST(ShiYe, CounterexampleBudgets) {
    ShiYePolicy policy;
    const auto b = budgets(gen_counterexample().to_job_set(), policy, 32);
    EXPECT_EQ(b[0], 6);
    EXPECT_EQ(b[16], 150);
    const std::vector<Count> tail{94, 113, 132, 150, 169, 188, 207, 225, 244, 263, 282, 300};
    for (std::size_t i = 0; i < tail.size(); ++i) EXPECT_EQ(b[20 + i], 2 * tail[i]);
    EXPECT_EQ(std::accumulate(b.begin() + 20, b.end(), Count{0}), 4734);
}

TEST(ShiYe, CounterexampleCurveAroundSlot16) {
    ShiYePolicy policy;
    const auto b = budgets(gen_counterexample().to_job_set(), policy, 32);
    EXPECT_EQ(b[15], 76);
    for (std::size_t t = 16; t < 20; ++t) EXPECT_EQ(b[t], 150);
    EXPECT_EQ(b[20], 188);
    for (std::size_t t = 1; t < b.size(); ++t) EXPECT_GE(b[t], b[t - 1]) << "t=" << t;
}

TEST(ShiYe, DensityTermTracksSlot) {
    ShiYePolicy policy;
    const JobSet star = gen_counterexample().to_job_set();
    for (Time t = 0; t <= 25; ++t) {
        policy.on_slot(t, star.arrivals_at(t));
        if (t == 0) EXPECT_EQ(policy.last_density(), Rational(75, 32));
        if (t == 16 || t == 19) EXPECT_EQ(policy.last_density(), 75);
        if (t == 25) EXPECT_EQ(policy.last_density(), Rational(375, 2));
    }
}

TEST(ShiYe, RejectsMixedDeadlines) {
    ShiYePolicy policy;
    EXPECT_THROW(run_online(JobSet({{0, 2, 1}, {0, 3, 1}}), policy), std::domain_error);
}

TEST(RunOnline, Counterexample) {
    ShiYePolicy policy;
    const auto report = run_online(gen_counterexample().to_job_set(), policy);
    EXPECT_EQ(report.misses, 10);
    EXPECT_EQ(report.total_budget, 5990);
    EXPECT_EQ(report.workload, 6000);
    EXPECT_EQ(report.opt_prefix.size(), 32u);
    ASSERT_TRUE(report.peak_ratio);
}

TEST(RunOnline, EmptyInstance) {
    PackingViaDensity pvd(make_rational(26, 5));
    const auto report = run_online(JobSet{}, pvd);
    EXPECT_EQ(report.misses, 0);
    EXPECT_TRUE(report.ratio_profile.empty());
    EXPECT_FALSE(report.peak_ratio);
}

TEST(RunOnline, RatioProfile) {
    PackingViaDensity pvd(2);
    const auto report = run_online(gen_uniform(3).to_job_set(), pvd);
    EXPECT_EQ(report.opt_prefix, (std::vector<Count>{1, 2, 3}));
    ASSERT_EQ(report.ratio_profile.size(), 3u);
    for (const auto& r : report.ratio_profile) EXPECT_EQ(r, Rational(2));
    EXPECT_EQ(report.peak_ratio, Rational(2));
}

TEST(ParsePolicy, Specs) {
    EXPECT_EQ(parse_policy("pvd:5.2")()->name(), "pvd:26/5");
    EXPECT_EQ(parse_policy("cap:209/100")()->name(), "cap:209/100");
    EXPECT_EQ(parse_policy("shi-ye")()->name(), "shi-ye");
    EXPECT_THROW(parse_policy("pvd:0"), std::invalid_argument);
    EXPECT_THROW(parse_policy("greedy"), std::invalid_argument);
    EXPECT_THROW(parse_policy("pvd:"), std::invalid_argument);
}

TEST(PolicyProperty, Causality) {
    std::mt19937_64 rng(31);
    const std::vector<std::string> specs{"pvd:26/5", "pvd:1", "cap:209/100"};
    for (int iter = 0; iter < 150; ++iter) {
        const JobSet jobs(oracle::random_jobs(rng, 12, 8, 5));
        const Time h = jobs.horizon();
        for (const auto& spec : specs) {
            auto full = parse_policy(spec)();
            const auto whole = budgets(jobs, *full, h);
            for (Time t = 0; t < h; ++t) {
                auto part = parse_policy(spec)();
                const auto cut = budgets(prefix(jobs, t), *part, h);
                for (Time s = 0; s <= t; ++s) {
                    EXPECT_EQ(cut[static_cast<std::size_t>(s)], whole[static_cast<std::size_t>(s)]) << spec;
                }
            }
        }
    }
}

TEST(PolicyProperty, ShiYeCausality) {
    const JobSet star = gen_counterexample().to_job_set();
    ShiYePolicy full;
    const auto whole = budgets(star, full, 32);
    for (Time t = 0; t < 32; ++t) {
        ShiYePolicy part;
        const auto cut = budgets(prefix(star, t), part, 32);
        for (Time s = 0; s <= t; ++s) EXPECT_EQ(cut[static_cast<std::size_t>(s)], whole[static_cast<std::size_t>(s)]);
    }
}

TEST(PolicyProperty, PvdMonotoneAndBounded) {
    std::mt19937_64 rng(32);
    const Rational c = make_rational(26, 5);
    for (int iter = 0; iter < 300; ++iter) {
        const JobSet jobs(oracle::random_jobs(rng, 15, 10, 8));
        PackingViaDensity pvd(c);
        const auto b = budgets(jobs, pvd, jobs.horizon());
        const Count cap = ceil_to_int64(c * opt_machines(jobs));
        for (std::size_t t = 0; t < b.size(); ++t) {
            if (t > 0) EXPECT_GE(b[t], b[t - 1]);
            EXPECT_LE(b[t], cap);
            const auto raw = std::vector<Job>(jobs.groups().begin(), jobs.groups().end());
            EXPECT_EQ(b[t], ceil_to_int64(c * oracle::max_density(oracle::arrived_by(raw, static_cast<Time>(t)))));
        }
    }
}

TEST(PolicyProperty, PvdFeasible) {
    std::mt19937_64 rng(33);
    for (int iter = 0; iter < 500; ++iter) {
        const JobSet jobs(oracle::random_jobs(rng, 30, 20, 30));
        PackingViaDensity pvd(make_rational(26, 5));
        EXPECT_EQ(run_online(jobs, pvd).misses, 0);
    }
}

TEST(PolicyProperty, ShiYeMatchesOracleOnUniversalDeadline) {
    std::mt19937_64 rng(34);
    for (int iter = 0; iter < 200; ++iter) {
        const Time d = std::uniform_int_distribution<Time>(1, 10)(rng);
        std::vector<Job> raw;
        for (Time t = 0; t < d; ++t) {
            const Count n = std::uniform_int_distribution<Count>(0, 5)(rng);
            if (n > 0) raw.push_back({t, d, n});
        }
        ShiYePolicy policy;
        const auto b = budgets(JobSet(raw), policy, d);
        for (Time t = 0; t < d; ++t) {
            const auto w = oracle::max_density_at(oracle::arrived_by(raw, t), t);
            EXPECT_EQ(b[static_cast<std::size_t>(t)], 2 * ceil_to_int64(w.value));
            EXPECT_EQ(w.value, oracle::max_density(oracle::arrived_by(raw, t)));
            if (t > 0) EXPECT_GE(b[static_cast<std::size_t>(t)], b[static_cast<std::size_t>(t - 1)]);
        }
    }
}
