#include "oracles.hpp"

#include <unitsched/adversary.hpp>
#include <unitsched/density.hpp>
#include <unitsched/policy.hpp>
#include <unitsched/potential.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace unitsched;

namespace {

std::vector<Rational> ints(std::initializer_list<long> values) {
    std::vector<Rational> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

std::vector<Rational> random_sigma(std::mt19937_64& rng, Time d_max, int w_max) {
    const Time d = std::uniform_int_distribution<Time>(1, d_max)(rng);
    std::vector<Rational> sigma;
    for (Time t = 0; t < d; ++t) sigma.emplace_back(std::uniform_int_distribution<int>(0, w_max)(rng));
    return sigma;
}

const std::vector<Rational>& factors() {
    static const std::vector<Rational> cs{Rational(1), make_rational(26, 5), Rational(8)};
    return cs;
}

}  // namespace

TEST(Potential, Examples) {
    EXPECT_EQ(potential(JobSet{}, Rational(3), 0, 5).value, 0);
    const auto u = gen_uniform(2).to_job_set();
    const auto one = potential(u, Rational(1), 0, 2);
    EXPECT_EQ(one.value, -1);
    EXPECT_EQ(one.density_sum, 3);
    EXPECT_EQ(one.workload, 4);
    EXPECT_EQ(potential(u, Rational(2), 0, 2).value, 2);
    EXPECT_EQ(potential(gen_uniform(2), Rational(1), 0, 2).value, -1);
    EXPECT_THROW(potential(u, Rational(1), 2, 2), std::invalid_argument);
}

TEST(Potential, ReconstructsFromParts) {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 200; ++iter) {
        const auto raw = oracle::random_jobs(rng, 10, 6, 4);
        const JobSet jobs(raw);
        const Time h = std::max<Time>(jobs.horizon(), 1);
        const Time t1 = std::uniform_int_distribution<Time>(0, h - 1)(rng);
        const Time t2 = std::uniform_int_distribution<Time>(t1 + 1, h)(rng);
        const auto v = potential(jobs, make_rational(26, 5), t1, t2);
        EXPECT_EQ(v.value, v.c * v.density_sum - v.workload);
        EXPECT_EQ(v.value, oracle::phi(raw, make_rational(26, 5), t1, t2));
    }
}

TEST(MinPotential, SignMatchesPvdFeasibility) {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 300; ++iter) {
        const JobSet jobs(oracle::random_jobs(rng, 10, 6, 6));
        for (const auto& c : {Rational(1), make_rational(3, 2), make_rational(26, 5)}) {
            PackingViaDensity pvd(c);
            const bool feasible = run_online(jobs, pvd).misses == 0;
            const auto low = min_potential(jobs, c);
            // Budgets are ceilings, so a negative potential need not mean a miss;
            // the converse direction is exact.
            if (low.value >= 0) EXPECT_TRUE(feasible);
            if (c == make_rational(26, 5)) EXPECT_GE(low.value, 0);
        }
    }
}

TEST(EqualDeadline, Examples) {
    EXPECT_EQ(reduce_equal_deadline(JobSet({{0, 2, 1}, {1, 3, 1}}), 2), ArrivalSequence(2, ints({1, 0})));
    EXPECT_EQ(reduce_equal_deadline(JobSet({{0, 2, 1}, {1, 2, 2}}), 2), ArrivalSequence(2, ints({1, 2})));
}

TEST(EqualDeadline, TailWorkloadPreserved) {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 300; ++iter) {
        const auto raw = oracle::random_jobs(rng, 10, 8, 4);
        const JobSet jobs(raw);
        if (jobs.empty()) continue;
        const Time d = std::uniform_int_distribution<Time>(1, jobs.horizon())(rng);
        const auto seq = reduce_equal_deadline(jobs, d);
        for (Time t = 0; t < d; ++t) EXPECT_EQ(workload(seq, Interval(t, d)), oracle::count_in(raw, t, d));
    }
}

TEST(EqualDeadline, PotentialDoesNotIncrease) {
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 200; ++iter) {
        const auto raw = oracle::random_jobs(rng, 9, 6, 4);
        const JobSet jobs(raw);
        if (jobs.empty()) continue;
        const Time d = std::uniform_int_distribution<Time>(1, jobs.horizon())(rng);
        const auto seq = reduce_equal_deadline(jobs, d);
        for (const auto& c : factors()) {
            for (Time t = 0; t < d; ++t) EXPECT_LE(potential(seq, c, t, d).value, oracle::phi(raw, c, t, d));
        }
    }
}

TEST(NonDecreasing, Examples) {
    const auto r1 = reduce_nondecreasing(ArrivalSequence(2, ints({3, 1})));
    EXPECT_EQ(r1.result, ArrivalSequence(2, ints({2, 2})));
    ASSERT_EQ(r1.steps.size(), 1u);
    EXPECT_EQ(r1.steps[0].k, 0);
    EXPECT_EQ(r1.steps[0].m, 1);
    EXPECT_EQ(r1.steps[0].average, 2);

    const auto r2 = reduce_nondecreasing(ArrivalSequence(3, ints({1, 2, 3})));
    EXPECT_EQ(r2.result, ArrivalSequence(3, ints({1, 2, 3})));
    EXPECT_TRUE(r2.steps.empty());

    const auto r3 = reduce_nondecreasing(ArrivalSequence(3, ints({4, 0, 2})));
    EXPECT_EQ(r3.result, ArrivalSequence(3, ints({2, 2, 2})));
    ASSERT_FALSE(r3.steps.empty());
    EXPECT_EQ(r3.steps[0].k, 0);
}

TEST(NonDecreasing, FractionalAverages) {
    const auto r = reduce_nondecreasing(ArrivalSequence(3, ints({2, 0, 0})));
    EXPECT_TRUE(r.result.is_non_decreasing());
    EXPECT_EQ(r.result.total_workload(), 2);
    EXPECT_EQ(r.result[0], make_rational(2, 3));
}

TEST(NonDecreasing, StepProperties) {
    std::mt19937_64 rng(45);
    for (int iter = 0; iter < 600; ++iter) {
        const auto sigma = random_sigma(rng, 9, 6);
        ArrivalSequence cur(static_cast<Time>(sigma.size()), sigma);
        const Rational total = cur.total_workload();
        while (auto step = next_reduction_step(cur)) {
            EXPECT_LT(step->k, step->m);
            EXPECT_GT(cur[step->k], cur[step->k + 1]);
            for (Time i = step->k + 1; i + 1 < cur.deadline(); ++i) EXPECT_LE(cur[i], cur[i + 1]);
            const auto next = apply_step(cur, *step);
            for (Time i = step->k; i <= step->m; ++i) EXPECT_EQ(next[i], step->average);
            EXPECT_EQ(next.total_workload(), total);
            const auto before = prefix_max_densities(cur, cur.deadline());
            const auto after = prefix_max_densities(next, next.deadline());
            for (std::size_t t = 0; t < before.size(); ++t) EXPECT_LE(after[t], before[t]);
            for (const auto& c : factors()) {
                EXPECT_LE(potential(next, c, 0, next.deadline()).value, potential(cur, c, 0, cur.deadline()).value);
            }
            cur = next;
        }
        EXPECT_TRUE(cur.is_non_decreasing());
        EXPECT_EQ(reduce_nondecreasing(ArrivalSequence(static_cast<Time>(sigma.size()), sigma)).result, cur);
    }
}

TEST(PhiCheck, Examples) {
    EXPECT_FALSE(check_phi_nonneg(ArrivalSequence(2, ints({1, 1})), make_rational(1, 10)).non_negative);
    EXPECT_THROW(check_phi_nonneg(ArrivalSequence(2, ints({2, 1})), Rational(8)), std::invalid_argument);
}

TEST(PhiCheck, NonDecreasingSequencesAreNonNegative) {
    std::mt19937_64 rng(46);
    for (int iter = 0; iter < 500; ++iter) {
        auto sigma = random_sigma(rng, 12, 20);
        std::sort(sigma.begin(), sigma.end());
        const ArrivalSequence seq(static_cast<Time>(sigma.size()), sigma);
        for (const auto& c : {Rational(8), make_rational(26, 5)}) {
            const auto check = check_phi_nonneg(seq, c);
            EXPECT_TRUE(check.non_negative);
            EXPECT_EQ(check.potential.value, oracle::seq_phi(sigma, c));
        }
    }
}

TEST(PhiCheck, TailCover) {
    std::mt19937_64 rng(47);
    for (int iter = 0; iter < 500; ++iter) {
        auto sigma = random_sigma(rng, 12, 20);
        if (sigma.size() < 2) continue;
        std::sort(sigma.begin(), sigma.end());
        const auto& last = sigma.back();
        if (last == 0) continue;
        EXPECT_GT(8 * last - (last + sigma[sigma.size() - 2]), 0);
    }
}

TEST(PhiCheck, ReducedRandomInstances) {
    std::mt19937_64 rng(48);
    for (int iter = 0; iter < 300; ++iter) {
        const JobSet jobs(oracle::random_jobs(rng, 12, 10, 8));
        if (jobs.empty()) continue;
        for (Time d = 1; d <= jobs.horizon(); ++d) {
            const auto up = reduce_nondecreasing(reduce_equal_deadline(jobs, d)).result;
            EXPECT_TRUE(check_phi_nonneg(up, make_rational(26, 5)).non_negative);
        }
    }
}

TEST(FBeta, Examples) {
    const auto good = f_beta_check(make_rational(13, 5), make_rational(13, 5), 3);
    EXPECT_EQ(good.argmin, make_rational(15, 26));
    EXPECT_EQ(good.min_value, make_rational(1, 2340));
    EXPECT_TRUE(good.feasible);
    EXPECT_FALSE(f_beta_check(Rational(1), Rational(1), 3).feasible);
}

TEST(FBeta, MinimumIsTheGridMinimum) {
    const Rational l1 = make_rational(13, 5), l2 = make_rational(13, 5);
    const int alpha = 3;
    auto f = [&](const Rational& b) -> Rational {
        return l1 * (alpha - 1) / (2 * alpha) * b * b + l2 * (alpha - 1) / (2 * alpha * alpha) - b;
    };
    const auto r = f_beta_check(l1, l2, alpha);
    EXPECT_EQ(f(r.argmin), r.min_value);
    for (int i = 0; i <= 1000; ++i) EXPECT_GE(f(make_rational(i, 1000)), r.min_value);
}

TEST(FBeta, ClampedArgmin) {
    const auto r = f_beta_check(make_rational(1, 2), Rational(4), 2);
    EXPECT_EQ(r.argmin, 1);
    EXPECT_EQ(r.min_value, make_rational(-3, 8));
}

TEST(FBeta, MinimalLambda2IsTight) {
    for (int alpha = 2; alpha <= 5; ++alpha) {
        for (int i = 1; i <= 30; ++i) {
            const Rational l1 = make_rational(i, 5);
            const Rational l2 = min_feasible_lambda2(l1, alpha);
            EXPECT_TRUE(f_beta_check(l1, l2, alpha).feasible);
            EXPECT_FALSE(f_beta_check(l1, l2 - make_rational(1, 1000), alpha).feasible);
        }
    }
}
