#include <unitsched/potential.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace unitsched {

namespace {

void check_window(Time t1, Time t2) {
    if (t1 < 0 || t2 <= t1) {
        throw std::invalid_argument("potential window needs 0 <= t1 < t2, got [" + std::to_string(t1) + ", " +
                                    std::to_string(t2) + ")");
    }
}

PotentialValue assemble(const std::vector<Density>& prefix_max, const Rational& c, Time t1, Time t2,
                        Rational work) {
    PotentialValue pv;
    pv.density_sum = 0;
    for (Time t = t1; t < t2; ++t) pv.density_sum += prefix_max[static_cast<std::size_t>(t)];
    pv.workload = std::move(work);
    pv.value = c * pv.density_sum - pv.workload;
    pv.c = c;
    pv.t1 = t1;
    pv.t2 = t2;
    return pv;
}

}  // namespace

PotentialValue potential(const JobSet& jobs, const Rational& c, Time t1, Time t2) {
    check_window(t1, t2);
    return assemble(prefix_max_densities(jobs, t2), c, t1, t2, workload(jobs, Interval(t1, t2)));
}

PotentialValue potential(const ArrivalSequence& seq, const Rational& c, Time t1, Time t2) {
    check_window(t1, t2);
    return assemble(prefix_max_densities(seq, t2), c, t1, t2, workload(seq, Interval(t1, t2)));
}

PotentialMinimum min_potential(const JobSet& jobs, const Rational& c) {
    PotentialMinimum best;
    if (jobs.empty()) {
        best.value = 0;
        return best;
    }
    WorkloadIndex index(jobs);
    const auto prefix_max = prefix_max_densities(jobs, jobs.horizon());
    std::vector<Rational> cumulative(prefix_max.size() + 1, Rational(0));
    for (std::size_t t = 0; t < prefix_max.size(); ++t) cumulative[t + 1] = cumulative[t] + prefix_max[t];

    std::vector<Time> lefts = index.arrivals();
    if (lefts.front() != 0) lefts.insert(lefts.begin(), 0);
    for (Time l : lefts) {
        for (Time r : index.deadlines()) {
            if (r <= l) continue;
            Rational phi = c * (cumulative[static_cast<std::size_t>(r)] - cumulative[static_cast<std::size_t>(l)]) -
                           make_rational(index.workload(l, r));
            if (!best.interval || phi < best.value) {
                best.value = phi;
                best.interval = Interval(l, r);
            }
        }
    }
    return best;
}

ArrivalSequence reduce_equal_deadline(const JobSet& jobs, Time d) {
    if (d < 1) throw std::invalid_argument("reduction deadline must be positive");
    std::vector<Rational> sigma(static_cast<std::size_t>(d), Rational(0));
    for (const auto& j : jobs.groups()) {
        if (j.deadline <= d) sigma[static_cast<std::size_t>(j.arrival)] += j.count;
    }
    return ArrivalSequence(d, std::move(sigma));
}

std::optional<ReductionStep> next_reduction_step(const ArrivalSequence& seq) {
    const auto sigma = seq.sigma();
    const Time d = seq.deadline();
    std::optional<Time> k;
    for (Time i = d - 1; i-- > 0;) {
        if (sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(i) + 1]) {
            k = i;
            break;
        }
    }
    if (!k) return std::nullopt;

    // sigma[k+1] < sigma[k] puts k+1 below the average of the pair; extend
    // while the next slot stays strictly below the extended average. Ties
    // end the block.
    Time m = *k + 1;
    Rational sum = sigma[static_cast<std::size_t>(*k)] + sigma[static_cast<std::size_t>(m)];
    while (m + 1 < d) {
        const Rational& next = sigma[static_cast<std::size_t>(m) + 1];
        Rational extended = sum + next;
        if (!(next * (m + 2 - *k) < extended)) break;
        sum = std::move(extended);
        ++m;
    }
    return ReductionStep{*k, m, Rational(sum / (m - *k + 1))};
}

ArrivalSequence apply_step(const ArrivalSequence& seq, const ReductionStep& step) {
    std::vector<Rational> sigma(seq.sigma().begin(), seq.sigma().end());
    for (Time i = step.k; i <= step.m; ++i) sigma[static_cast<std::size_t>(i)] = step.average;
    return ArrivalSequence(seq.deadline(), std::move(sigma));
}

NonDecreasingReduction reduce_nondecreasing(const ArrivalSequence& seq) {
    NonDecreasingReduction out{seq, {}};
    const Time limit = seq.deadline() * seq.deadline();
    while (auto step = next_reduction_step(out.result)) {
        if (static_cast<Time>(out.steps.size()) >= limit) {
            throw std::logic_error("non-decreasing reduction did not settle within d^2 steps");
        }
        out.result = apply_step(out.result, *step);
        out.steps.push_back(std::move(*step));
    }
    return out;
}

PhiCheck check_phi_nonneg(const ArrivalSequence& sigma_up, const Rational& c) {
    if (!sigma_up.is_non_decreasing()) {
        throw std::invalid_argument("potential check expects a non-decreasing arrival sequence");
    }
    PhiCheck check;
    check.potential = potential(sigma_up, c, 0, sigma_up.deadline());
    check.non_negative = check.potential.value >= 0;
    return check;
}

FBetaResult f_beta_check(const Rational& lambda1, const Rational& lambda2, int alpha) {
    if (alpha < 2) throw std::invalid_argument("alpha must be at least 2");
    if (lambda1 < 0 || lambda2 < 0) throw std::invalid_argument("lambdas must be non-negative");
    const Rational a(alpha);
    const Rational quad = lambda1 * (a - 1) / (2 * a);
    const Rational constant = lambda2 * (a - 1) / (2 * a * a);

    FBetaResult r;
    if (quad > 0) {
        r.argmin = 1 / (2 * quad);
        if (r.argmin > 1) r.argmin = 1;
    } else {
        r.argmin = 1;
    }
    r.min_value = quad * r.argmin * r.argmin + constant - r.argmin;
    r.feasible = r.min_value >= 0 && lambda1 + lambda2 >= a;
    return r;
}

Rational min_feasible_lambda2(const Rational& lambda1, int alpha) {
    if (alpha < 2) throw std::invalid_argument("alpha must be at least 2");
    const Rational a(alpha);
    const Rational quad = lambda1 * (a - 1) / (2 * a);
    // Largest value of beta - quad * beta^2 on [0, 1].
    Rational gap = (quad > 0 && 2 * quad >= 1) ? Rational(1 / (4 * quad)) : Rational(1 - quad);
    Rational lambda2 = gap * 2 * a * a / (a - 1);
    if (lambda1 + lambda2 < a) lambda2 = a - lambda1;
    if (lambda2 < 0) lambda2 = 0;
    return lambda2;
}

}  // namespace unitsched
