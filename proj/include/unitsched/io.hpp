#pragma once

#include <unitsched/adversary.hpp>
#include <unitsched/job.hpp>
#include <unitsched/policy.hpp>
#include <unitsched/potential.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <variant>

namespace unitsched::io {

/// A parsed instance file: either explicit job groups or one
/// universal-deadline record.
using Instance = std::variant<JobSet, ArrivalSequence>;

/// Reads JSON-lines. Each non-blank line is either
///   {"arrival": a, "deadline": d, "count": n}   (n >= 0; zero counts are skipped)
/// or a single
///   {"deadline": d, "sigma": [w0, w1, ...]}     (w as integer or "p/q" string).
/// Throws std::runtime_error with the line number on malformed input.
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);

/// Job view of an instance; fractional sequences throw std::domain_error.
JobSet as_job_set(const Instance& instance);

void write_jobs(std::ostream& out, const JobSet& jobs);

/// One job record per slot (zero-count slots included) so slot t is line t + 1.
void write_sequence_as_jobs(std::ostream& out, const ArrivalSequence& seq);

void write_sequence(std::ostream& out, const ArrivalSequence& seq);

nlohmann::json rational_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& value);

nlohmann::json to_json(const RunReport& report);
void write_report_csv(std::ostream& out, const RunReport& report);

nlohmann::json to_json(const AdversaryVerdict& verdict);
void write_transcript_csv(std::ostream& out, const AdversaryVerdict& verdict);

nlohmann::json to_json(const NonDecreasingReduction& reduction);

}  // namespace unitsched::io
