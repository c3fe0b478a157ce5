#pragma once

#include <unitsched/job.hpp>
#include <unitsched/policy.hpp>
#include <unitsched/rational.hpp>

#include <map>
#include <optional>
#include <vector>

namespace unitsched {

/// Parameters of the phased lower-bound family: k phases of alpha^2 slots,
/// base weight h = k! * alpha^2 * h_prime (which makes every prefix density
/// integral). `h_override` replaces h outright for hand-sized tests.
struct LowerBoundParams {
    int k = 6;
    int alpha = 5;
    Count h_prime = 1;
    std::optional<Count> h_override;

    void validate() const;
    Count h() const;
    Time horizon() const { return static_cast<Time>(k) * alpha * alpha; }
};

/// (d, (d, d, ..., d)): d slots each releasing d jobs due at d.
ArrivalSequence gen_uniform(Time d);

/// The 32-slot instance on which the doubled-ceiling rule misses 10 jobs:
/// 75 x16, 1200, 0 x3, 300 x12.
ArrivalSequence gen_counterexample();

/// Phase 0 releases h per slot; slot j of phase i releases
/// alpha * (k - i) times slot j of phase i - 1.
ArrivalSequence gen_lower_bound(const LowerBoundParams& p);

/// Left end of the defining interval of the prefix ending at t, from the
/// piecewise closed form (0 in phase 0; (i-1)alpha^2 early in phase i;
/// i*alpha^2 from offset alpha on).
Time piecewise_left_end(const LowerBoundParams& p, Time t);

/// Left ends computed by max_density_at on each prefix of gen_lower_bound(p).
std::map<Time, Time> defining_interval_table(const LowerBoundParams& p);

struct AdversarySlot {
    Time t = 0;
    Count released = 0;
    Count budget = 0;
    Rational threshold;  ///< c * prefix max density
};

struct AdversaryVerdict {
    enum class Outcome { ExceededBudget, Infeasible, Survived };

    Outcome outcome = Outcome::Survived;
    std::optional<Time> exceeded_at;
    Count misses = 0;
    std::vector<AdversarySlot> transcript;
};

const char* to_string(AdversaryVerdict::Outcome outcome);

/// Plays the online adversary: releases the lower-bound sequence slot by
/// slot and stops the moment the policy's budget exceeds c times the prefix
/// max density (exact comparison). If the policy stays under the threshold
/// throughout, the run is simulated and the policy survives only with zero
/// misses.
AdversaryVerdict adversary_run(const Rational& c, const LowerBoundParams& p, OnlinePolicy& policy);

/// Exact lower-bound accounting for the phased family, normalised by h.
struct LowerBoundCertificate {
    Rational density_sum_per_h;          ///< sum over t of the prefix max density / h
    Rational workload_per_h;             ///< total jobs / h
    Rational closed_form_density_sum;    ///< same sum from the per-phase closed forms
    Rational closed_form_workload;
    Rational ratio;                      ///< workload / density sum: any c below it loses
    bool deficit = false;                ///< c * density sum < workload
};

/// Computes the density sum twice, once from closed forms and once by
/// evaluating every prefix of the generated sequence. Throws
/// std::logic_error if the two disagree.
LowerBoundCertificate lower_bound_certificate(int k, int alpha, const Rational& c);

}  // namespace unitsched
