#include <unitsched/adversary.hpp>
#include <unitsched/density.hpp>
#include <unitsched/edf.hpp>

#include <stdexcept>
#include <string>

namespace unitsched {

namespace {

mpz_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

mpz_class power(int base, int exp) {
    mpz_class p = 1;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

// Per-slot weight of phase i in units of h: alpha^i (k-1)! / (k-1-i)!.
Rational phase_weight(int k, int alpha, int i) {
    Rational w(power(alpha, i) * factorial(k - 1), factorial(k - 1 - i));
    w.canonicalize();
    return w;
}

}  // namespace

void LowerBoundParams::validate() const {
    if (k < 2) throw std::invalid_argument("lower-bound family needs k >= 2");
    if (alpha < 2) throw std::invalid_argument("lower-bound family needs alpha >= 2");
    if (h_override) {
        if (*h_override < 1) throw std::invalid_argument("h must be positive");
    } else if (h_prime < 1) {
        throw std::invalid_argument("h' must be positive");
    }
}

Count LowerBoundParams::h() const {
    if (h_override) return *h_override;
    return to_int64(factorial(k) * alpha * alpha * mpz_class(static_cast<long>(h_prime)));
}

ArrivalSequence gen_uniform(Time d) {
    if (d < 1) throw std::invalid_argument("uniform instance needs d >= 1");
    return ArrivalSequence(d, std::vector<Rational>(static_cast<std::size_t>(d), make_rational(d)));
}

ArrivalSequence gen_counterexample() {
    std::vector<Rational> sigma;
    for (int t = 0; t < 16; ++t) sigma.emplace_back(75);
    sigma.emplace_back(1200);
    for (int t = 0; t < 3; ++t) sigma.emplace_back(0);
    for (int t = 0; t < 12; ++t) sigma.emplace_back(300);
    return ArrivalSequence(32, std::move(sigma));
}

ArrivalSequence gen_lower_bound(const LowerBoundParams& p) {
    p.validate();
    const Time phase = static_cast<Time>(p.alpha) * p.alpha;
    std::vector<Rational> sigma(static_cast<std::size_t>(p.horizon()));
    for (int i = 0; i < p.k; ++i) {
        for (Time j = 0; j < phase; ++j) {
            auto slot = static_cast<std::size_t>(i * phase + j);
            sigma[slot] = i == 0 ? make_rational(p.h())
                                 : Rational(sigma[slot - static_cast<std::size_t>(phase)] * (p.alpha * (p.k - i)));
        }
    }
    return ArrivalSequence(p.horizon(), std::move(sigma));
}

Time piecewise_left_end(const LowerBoundParams& p, Time t) {
    const Time phase = static_cast<Time>(p.alpha) * p.alpha;
    const Time i = t / phase;
    const Time j = t % phase;
    if (i == 0) return 0;
    return j < p.alpha ? (i - 1) * phase : i * phase;
}

std::map<Time, Time> defining_interval_table(const LowerBoundParams& p) {
    const ArrivalSequence seq = gen_lower_bound(p);
    std::map<Time, Time> table;
    for (Time t = 0; t < seq.deadline(); ++t) {
        table[t] = max_density_at(prefix(seq, t), t).interval.left;
    }
    return table;
}

const char* to_string(AdversaryVerdict::Outcome outcome) {
    switch (outcome) {
        case AdversaryVerdict::Outcome::ExceededBudget: return "EXCEEDED_BUDGET";
        case AdversaryVerdict::Outcome::Infeasible: return "INFEASIBLE";
        case AdversaryVerdict::Outcome::Survived: return "SURVIVED";
    }
    return "?";
}

AdversaryVerdict adversary_run(const Rational& c, const LowerBoundParams& p, OnlinePolicy& policy) {
    if (c <= 0) throw std::invalid_argument("adversary factor must be positive");
    const JobSet jobs = gen_lower_bound(p).to_job_set();
    const Time horizon = p.horizon();

    AdversaryVerdict verdict;
    PrefixDensityTracker tracker;
    BudgetTrace budgets;
    for (Time t = 0; t < horizon; ++t) {
        const auto arrivals = jobs.arrivals_at(t);
        tracker.observe(t, arrivals);
        Count released = 0;
        for (const auto& j : arrivals) released += j.count;
        const Count b = policy.on_slot(t, arrivals);
        Rational threshold = c * tracker.current();
        verdict.transcript.push_back({t, released, b, threshold});
        budgets.budgets.push_back(b);
        if (make_rational(b) > threshold) {
            verdict.outcome = AdversaryVerdict::Outcome::ExceededBudget;
            verdict.exceeded_at = t;
            return verdict;
        }
    }
    const auto trace = simulate_edf(jobs, budgets);
    verdict.misses = trace.miss_count;
    verdict.outcome = trace.miss_count > 0 ? AdversaryVerdict::Outcome::Infeasible
                                           : AdversaryVerdict::Outcome::Survived;
    return verdict;
}

LowerBoundCertificate lower_bound_certificate(int k, int alpha, const Rational& c) {
    LowerBoundParams p{k, alpha, 1, Count{1}};
    p.validate();
    const Time phase = static_cast<Time>(alpha) * alpha;
    const Time horizon = p.horizon();

    LowerBoundCertificate cert;
    cert.closed_form_density_sum = 0;
    cert.closed_form_workload = 0;
    for (int i = 0; i < k; ++i) {
        cert.closed_form_workload += phase_weight(k, alpha, i) * phase;
        for (Time j = 0; j < phase; ++j) {
            Rational rho;
            if (i == 0) {
                rho = make_rational(j + 1, horizon);
            } else if (j < alpha) {
                // defining interval starts at (i-1) alpha^2: a full previous phase plus j+1 slots of phase i
                rho = (make_rational(phase) + make_rational((j + 1) * alpha * (k - i))) * phase_weight(k, alpha, i - 1) /
                      make_rational(static_cast<Time>(k - i + 1) * phase);
            } else {
                rho = make_rational(j + 1, static_cast<Time>(k - i) * phase) * phase_weight(k, alpha, i);
            }
            cert.closed_form_density_sum += rho;
        }
    }

    const ArrivalSequence seq = gen_lower_bound(p);
    cert.workload_per_h = seq.total_workload();
    cert.density_sum_per_h = 0;
    for (const auto& rho : prefix_max_densities(seq, horizon)) cert.density_sum_per_h += rho;

    if (cert.closed_form_density_sum != cert.density_sum_per_h || cert.closed_form_workload != cert.workload_per_h) {
        throw std::logic_error("lower-bound closed forms disagree with direct evaluation: density sum " +
                               to_string(cert.closed_form_density_sum) + " vs " + to_string(cert.density_sum_per_h) +
                               ", workload " + to_string(cert.closed_form_workload) + " vs " +
                               to_string(cert.workload_per_h));
    }
    cert.ratio = cert.workload_per_h / cert.density_sum_per_h;
    cert.deficit = c * cert.density_sum_per_h < cert.workload_per_h;
    return cert;
}

}  // namespace unitsched
