#include "oracles.hpp"

#include <unitsched/adversary.hpp>
#include <unitsched/io.hpp>
#include <unitsched/policy.hpp>
#include <unitsched/potential.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace unitsched;

namespace {

io::Instance parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_instance(in);
}

}  // namespace

TEST(ReadInstance, JobRecords) {
    const auto inst = parse(R"({"arrival": 0, "deadline": 2, "count": 3}
{"arrival": 1, "deadline": 2, "count": 0}

{"arrival": 1, "deadline": 4, "count": 1}
)");
    ASSERT_TRUE(std::holds_alternative<JobSet>(inst));
    EXPECT_EQ(std::get<JobSet>(inst), JobSet({{0, 2, 3}, {1, 4, 1}}));
}

TEST(ReadInstance, SigmaRecord) {
    const auto inst = parse(R"({"deadline": 3, "sigma": [1, "3/2", "0"]})");
    ASSERT_TRUE(std::holds_alternative<ArrivalSequence>(inst));
    const auto& seq = std::get<ArrivalSequence>(inst);
    EXPECT_EQ(seq[1], make_rational(3, 2));
    EXPECT_THROW(io::as_job_set(inst), std::domain_error);
}

TEST(ReadInstance, ErrorsNameTheLine) {
    const std::vector<std::string> bad{
        "{\"arrival\": 0, \"deadline\": 2}",
        "{\"arrival\": 0, \"deadline\": 0, \"count\": 1}",
        "{\"arrival\": 0, \"deadline\": 2, \"count\": -1}",
        "{\"arrival\": 0.5, \"deadline\": 2, \"count\": 1}",
        "[1, 2]",
        "{nope",
        "{\"deadline\": 2, \"sigma\": [1]}",
        "{\"deadline\": 2, \"sigma\": [1, 1]}\n{\"arrival\": 0, \"deadline\": 2, \"count\": 1}",
    };
    for (const auto& text : bad) {
        try {
            parse(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const std::runtime_error& e) {
            EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
        }
    }
}

TEST(WriteInstance, CounterexampleHas32Records) {
    std::ostringstream out;
    io::write_sequence_as_jobs(out, gen_counterexample());
    const std::string text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 32);
    EXPECT_EQ(io::as_job_set(parse(text)), gen_counterexample().to_job_set());
}

TEST(WriteInstance, RoundTrip) {
    std::mt19937_64 rng(51);
    for (int iter = 0; iter < 200; ++iter) {
        const JobSet jobs(oracle::random_jobs(rng, 20, 10, 100));
        std::ostringstream out;
        io::write_jobs(out, jobs);
        EXPECT_EQ(io::as_job_set(parse(out.str())), jobs);
    }
}

TEST(WriteInstance, SequenceRoundTrip) {
    const ArrivalSequence seq(4, {Rational(1), make_rational(5, 3), Rational(0), make_rational(7, 2)});
    std::ostringstream out;
    io::write_sequence(out, seq);
    EXPECT_EQ(std::get<ArrivalSequence>(parse(out.str())), seq);
}

TEST(RationalJson, Forms) {
    EXPECT_EQ(io::rational_json(Rational(4)).dump(), "4");
    EXPECT_EQ(io::rational_json(make_rational(3, 2)).dump(), "\"3/2\"");
    EXPECT_EQ(io::rational_from_json(nlohmann::json("26/5")), make_rational(26, 5));
    EXPECT_THROW(io::rational_from_json(nlohmann::json(1.5)), std::invalid_argument);
}

TEST(Reports, RunReportJson) {
    PackingViaDensity pvd(2);
    const auto j = io::to_json(run_online(gen_uniform(3).to_job_set(), pvd));
    EXPECT_EQ(j["policy"], "pvd:2");
    EXPECT_EQ(j["misses"], 0);
    EXPECT_EQ(j["budget_curve"], nlohmann::json({2, 4, 6}));
    EXPECT_EQ(j["ratio_profile"], nlohmann::json({"2", "2", "2"}));
    EXPECT_EQ(j["peak_ratio"], "2");
    EXPECT_EQ(j["peak_ratio_decimal"], "2.000000");
}

TEST(Reports, RunReportCsv) {
    PackingViaDensity pvd(1);
    std::ostringstream out;
    io::write_report_csv(out, run_online(JobSet({{0, 2, 3}}), pvd));
    EXPECT_EQ(out.str(),
              "t,budget,executed,ready,cumulative_misses,opt_prefix,ratio\n"
              "0,2,2,3,0,2,1\n"
              "1,2,1,1,0,2,1\n");
}

TEST(Reports, ReductionTrace) {
    const auto j = io::to_json(reduce_nondecreasing(ArrivalSequence(3, {Rational(2), Rational(0), Rational(0)})));
    EXPECT_EQ(j["deadline"], 3);
    ASSERT_EQ(j["steps"].size(), 1u);
    EXPECT_EQ(j["steps"][0]["average"], "2/3");
    EXPECT_EQ(j["result"], nlohmann::json({"2/3", "2/3", "2/3"}));
}

TEST(Reports, AdversaryTranscript) {
    PackingViaDensity pvd(make_rational(26, 5));
    const auto v = adversary_run(make_rational(209, 100), LowerBoundParams{2, 2, 1, std::nullopt}, pvd);
    std::ostringstream out;
    io::write_transcript_csv(out, v);
    EXPECT_EQ(out.str().substr(0, 27), "t,released,budget,threshold");
    EXPECT_EQ(io::to_json(v)["outcome"], "EXCEEDED_BUDGET");
}
