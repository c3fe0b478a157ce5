#include <unitsched/io.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace unitsched::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("instance line " + std::to_string(line) + ": " + what);
}

Time integer_field(const json& record, const char* key, std::size_t line) {
    if (!record.contains(key)) fail(line, std::string("missing field '") + key + "'");
    const auto& v = record.at(key);
    if (!v.is_number_integer()) fail(line, std::string("field '") + key + "' must be an integer");
    return v.get<Time>();
}

}  // namespace

json rational_json(const Rational& value) {
    if (is_integer(value) && value.get_num().fits_slong_p()) return json(value.get_num().get_si());
    return json(to_string(value));
}

Rational rational_from_json(const json& value) {
    if (value.is_number_integer()) return make_rational(value.get<std::int64_t>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
    throw std::invalid_argument("expected an integer or a \"p/q\" string, got " + value.dump());
}

Instance read_instance(std::istream& in) {
    std::vector<Job> jobs;
    std::optional<ArrivalSequence> sequence;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record;
        try {
            record = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(line, e.what());
        }
        if (!record.is_object()) fail(line, "expected a JSON object");

        if (record.contains("sigma")) {
            if (sequence || !jobs.empty()) fail(line, "a sigma record must be the only record in the file");
            Time d = integer_field(record, "deadline", line);
            const auto& raw = record.at("sigma");
            if (!raw.is_array()) fail(line, "'sigma' must be an array");
            std::vector<Rational> sigma;
            try {
                for (const auto& w : raw) sigma.push_back(rational_from_json(w));
                sequence.emplace(d, std::move(sigma));
            } catch (const std::invalid_argument& e) {
                fail(line, e.what());
            }
            continue;
        }
        if (sequence) fail(line, "job records cannot follow a sigma record");
        Job j{integer_field(record, "arrival", line), integer_field(record, "deadline", line),
              integer_field(record, "count", line)};
        if (j.count < 0) fail(line, "count must be non-negative");
        if (j.count == 0) continue;
        try {
            j.validate();
        } catch (const std::invalid_argument& e) {
            fail(line, e.what());
        }
        jobs.push_back(j);
    }
    if (sequence) return *std::move(sequence);
    return JobSet(std::move(jobs));
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    return read_instance(in);
}

JobSet as_job_set(const Instance& instance) {
    if (const auto* jobs = std::get_if<JobSet>(&instance)) return *jobs;
    return std::get<ArrivalSequence>(instance).to_job_set();
}

void write_jobs(std::ostream& out, const JobSet& jobs) {
    for (const auto& j : jobs.groups()) {
        out << json{{"arrival", j.arrival}, {"deadline", j.deadline}, {"count", j.count}}.dump() << '\n';
    }
}

void write_sequence_as_jobs(std::ostream& out, const ArrivalSequence& seq) {
    for (Time t = 0; t < seq.deadline(); ++t) {
        if (!is_integer(seq[t])) {
            throw std::domain_error("slot " + std::to_string(t) + " has fractional weight; write it as a sigma record");
        }
        out << json{{"arrival", t}, {"deadline", seq.deadline()}, {"count", to_int64(seq[t].get_num())}}.dump()
            << '\n';
    }
}

void write_sequence(std::ostream& out, const ArrivalSequence& seq) {
    json sigma = json::array();
    for (const auto& w : seq.sigma()) sigma.push_back(rational_json(w));
    out << json{{"deadline", seq.deadline()}, {"sigma", sigma}}.dump() << '\n';
}

json to_json(const RunReport& report) {
    json ratios = json::array();
    for (const auto& r : report.ratio_profile) ratios.push_back(r ? json(to_string(*r)) : json(nullptr));
    json j{
        {"policy", report.policy},
        {"misses", report.misses},
        {"workload", report.workload},
        {"total_budget", report.total_budget},
        {"peak_machines", report.trace.peak_machines},
        {"budget_curve", report.budget_curve.budgets},
        {"opt_prefix", report.opt_prefix},
        {"ratio_profile", ratios},
    };
    if (report.peak_ratio) {
        j["peak_ratio"] = to_string(*report.peak_ratio);
        j["peak_ratio_decimal"] = to_decimal(*report.peak_ratio);
    } else {
        j["peak_ratio"] = nullptr;
        j["peak_ratio_decimal"] = nullptr;
    }
    return j;
}

void write_report_csv(std::ostream& out, const RunReport& report) {
    out << "t,budget,executed,ready,cumulative_misses,opt_prefix,ratio\n";
    for (std::size_t t = 0; t < report.budget_curve.budgets.size(); ++t) {
        out << t << ',' << report.budget_curve.budgets[t] << ',' << report.trace.executed[t] << ','
            << report.trace.ready[t] << ',' << report.trace.cumulative_misses[t] << ',' << report.opt_prefix[t] << ',';
        if (report.ratio_profile[t]) out << to_string(*report.ratio_profile[t]);
        out << '\n';
    }
}

json to_json(const AdversaryVerdict& verdict) {
    json slots = json::array();
    for (const auto& s : verdict.transcript) {
        slots.push_back({{"t", s.t}, {"released", s.released}, {"budget", s.budget},
                         {"threshold", to_string(s.threshold)}});
    }
    json j{{"outcome", to_string(verdict.outcome)}, {"misses", verdict.misses}, {"transcript", slots}};
    j["exceeded_at"] = verdict.exceeded_at ? json(*verdict.exceeded_at) : json(nullptr);
    return j;
}

void write_transcript_csv(std::ostream& out, const AdversaryVerdict& verdict) {
    out << "t,released,budget,threshold\n";
    for (const auto& s : verdict.transcript) {
        out << s.t << ',' << s.released << ',' << s.budget << ',' << to_string(s.threshold) << '\n';
    }
}

json to_json(const NonDecreasingReduction& reduction) {
    json steps = json::array();
    for (const auto& s : reduction.steps) {
        steps.push_back({{"k", s.k}, {"m", s.m}, {"average", to_string(s.average)}});
    }
    json result = json::array();
    for (const auto& w : reduction.result.sigma()) result.push_back(to_string(w));
    return {{"deadline", reduction.result.deadline()}, {"steps", steps}, {"result", result}};
}

}  // namespace unitsched::io
