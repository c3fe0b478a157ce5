#pragma once

#include <unitsched/density.hpp>
#include <unitsched/job.hpp>
#include <unitsched/rational.hpp>

#include <optional>
#include <vector>

namespace unitsched {

/// Phi_c(J, t1, t2) = c * sum_{t1 <= t < t2} max density of J(t) - J(t1, t2).
/// Non-negative over every interval iff packing-via-density(c), without the
/// ceiling, leaves no job unfinished.
struct PotentialValue {
    Rational value;
    Rational density_sum;  ///< sum of prefix max densities over [t1, t2)
    Rational workload;     ///< J(t1, t2)
    Rational c;
    Time t1 = 0;
    Time t2 = 1;
};

PotentialValue potential(const JobSet& jobs, const Rational& c, Time t1, Time t2);
PotentialValue potential(const ArrivalSequence& seq, const Rational& c, Time t1, Time t2);

/// Minimum of Phi_c over left ends in arrivals ∪ {0} and right ends in deadlines.
struct PotentialMinimum {
    Rational value;
    std::optional<Interval> interval;  ///< empty for the empty job set
};

PotentialMinimum min_potential(const JobSet& jobs, const Rational& c);

/// Every job with deadline <= d becomes a job due exactly at d; later jobs
/// are dropped. The result has horizon d.
ArrivalSequence reduce_equal_deadline(const JobSet& jobs, Time d);

/// One averaging step: k is the last descent (sigma[k] > sigma[k+1]) and m
/// the last index after k lying strictly below the running average of
/// sigma[k..m]; slots k..m are replaced by that average.
struct ReductionStep {
    Time k = 0;
    Time m = 1;
    Rational average;
};

/// The next step, or nothing when sigma is already non-decreasing.
std::optional<ReductionStep> next_reduction_step(const ArrivalSequence& seq);
ArrivalSequence apply_step(const ArrivalSequence& seq, const ReductionStep& step);

struct NonDecreasingReduction {
    ArrivalSequence result;
    std::vector<ReductionStep> steps;
};

/// Applies averaging steps until the sequence is non-decreasing. Total
/// workload is preserved exactly. Throws std::logic_error if more than d^2
/// steps are needed.
NonDecreasingReduction reduce_nondecreasing(const ArrivalSequence& seq);

struct PhiCheck {
    bool non_negative = false;
    PotentialValue potential;
};

/// Evaluates Phi_c(sigma, 0, d) for a non-decreasing sequence. Throws
/// std::invalid_argument for a sequence with a descent.
PhiCheck check_phi_nonneg(const ArrivalSequence& sigma_up, const Rational& c);

/// F(beta) = l1 (a-1)/(2a) beta^2 + l2 (a-1)/(2a^2) - beta, minimised over
/// beta in [0, 1].
struct FBetaResult {
    Rational min_value;
    Rational argmin;
    bool feasible = false;  ///< min_value >= 0 and l1 + l2 >= alpha
};

FBetaResult f_beta_check(const Rational& lambda1, const Rational& lambda2, int alpha);

/// Smallest lambda2 making F non-negative on [0, 1] for the given lambda1
/// and alpha, raised if needed so that lambda1 + lambda2 >= alpha.
Rational min_feasible_lambda2(const Rational& lambda1, int alpha);

}  // namespace unitsched
