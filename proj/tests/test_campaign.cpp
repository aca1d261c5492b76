#include "doctest.h"

#include "magnitude/io.hpp"
#include "magnitude/verify.hpp"

using namespace magnitude;
using namespace magnitude::verify;

TEST_CASE("serial reference and parallel engine produce identical reports") {
    for (const auto& name : theorem_names()) {
        VerifyOptions opts;
        opts.samples = name == "det4-positive" || name == "bounds-order" ? 120 : 40;
        opts.seed = 2024;
        opts.denominator_bound = 12;

        opts.execution = Execution::Serial;
        CampaignReport serial = run_theorem(name, opts);
        opts.execution = Execution::Parallel;
        CampaignReport parallel = run_theorem(name, opts);

        CAPTURE(name);
        CHECK(serial.same_outcome(parallel));
        CHECK(serial.passed());
    }
}

TEST_CASE("campaigns are reproducible for a fixed seed and differ across seeds") {
    VerifyOptions opts;
    opts.samples = 60;
    opts.seed = 9;
    auto a = run_theorem("det4-positive", opts);
    auto b = run_theorem("det4-positive", opts);
    CHECK(a.same_outcome(b));

    opts.seed = 10;
    auto c = run_theorem("det4-positive", opts);
    CHECK(a.attempts != c.attempts); // different randomness actually flowed
}

TEST_CASE("violations are ordered by sample index") {
    // a kernel that flags every third sample, run in parallel
    auto kernel = [](std::uint64_t s, SampleLog& log) {
        if (s % 3 == 0) log.violate("flagged");
        log.label(s % 2 == 0 ? "even" : "odd");
    };
    CampaignReport r = run_campaign("synthetic", 30, 0, kernel, Execution::Parallel);
    REQUIRE(r.violations.size() == 10);
    for (std::size_t i = 0; i + 1 < r.violations.size(); ++i)
        CHECK(r.violations[i].sample < r.violations[i + 1].sample);
    CHECK(r.histogram.at("even") == 15);
    CHECK(r.histogram.at("odd") == 15);
    CHECK_FALSE(r.passed());
}

TEST_CASE("report serialization carries the campaign interface fields") {
    VerifyOptions opts;
    opts.samples = 25;
    opts.seed = 3;
    CampaignReport r = run_theorem("bounds-order", opts);

    auto doc = io::campaign_json(r);
    CHECK(doc["samples"] == 25);
    CHECK(doc["seed"] == 3);
    CHECK(doc.contains("violations"));
    CHECK(doc.contains("case_histogram"));
    CHECK(doc["passed"] == true);
    CHECK(!doc.contains("elapsed_seconds")); // reports stay deterministic

    std::string csv = io::campaign_csv(r);
    CHECK(csv.find("theorem,bounds-order") != std::string::npos);
    CHECK(csv.find("violations,0") != std::string::npos);
}

TEST_CASE("unknown theorem names are rejected with the known list") {
    VerifyOptions opts;
    CHECK_THROWS_WITH_AS(run_theorem("no-such-theorem", opts),
                         doctest::Contains("det4-positive"), InputError);
}
