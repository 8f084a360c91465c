#include <catch2/catch_amalgamated.hpp>

#include "parmonge/report.hpp"

using namespace parmonge;

#ifndef PARMONGE_SOURCE_DIR
#define PARMONGE_SOURCE_DIR "."
#endif

TEST_CASE("request dispatch and exit codes") {
    SECTION("unknown command -> exit 1") {
        Request req;
        req.command = "frobnicate";
        REQUIRE(run(req).exit_code == 1);
    }
    SECTION("invalid rank -> exit 1 (domain error)") {
        Request req;
        req.command = "roots";
        req.family = 'G';
        req.rank = 5;
        REQUIRE(run(req).exit_code == 1);
    }
    SECTION("missing arguments -> exit 1") {
        Request req;
        req.command = "grade";
        REQUIRE(run(req).exit_code == 1);
    }
}

TEST_CASE("spec'd command examples") {
    SECTION("monge --family C --rank 3 --enumerate lists the two gradings") {
        Request req;
        req.command = "monge";
        req.family = 'C';
        req.rank = 3;
        req.enumerate = true;
        req.format = OutputFormat::json;
        Report rep = run(req);
        REQUIRE(rep.exit_code == 0);
        auto list = rep.payload["result"]["monge_gradings"];
        REQUIRE(list.size() == 2);
        REQUIRE(list[0]["sigma"] == nlohmann::json({1, 2, 3}));
        REQUIRE(list[1]["sigma"] == nlohmann::json({2, 3}));
    }
    SECTION("cohomology --family G --rank 2 --sigma 1: s12 with weight 4") {
        Request req;
        req.command = "cohomology";
        req.family = 'G';
        req.rank = 2;
        req.sigma_1based = {1};
        req.format = OutputFormat::json;
        Report rep = run(req);
        REQUIRE(rep.exit_code == 0);
        auto h2 = rep.payload["result"]["h2"];
        REQUIRE(h2.size() == 1);
        REQUIRE(h2[0]["sigma_word"] == "s12");
        REQUIRE(h2[0]["homogeneity_weight"] == 4);
        REQUIRE(h2[0]["class"] == "curvature");
    }
    SECTION("sym --case Va reports dimension 14") {
        Request req;
        req.command = "sym";
        req.case_id = "Va";
        req.format = OutputFormat::json;
        Report rep = run(req);
        REQUIRE(rep.exit_code == 0);
        REQUIRE(rep.payload["result"]["algebra"]["dimension"] == 14);
    }
}

TEST_CASE("determinism: identical requests produce identical bytes") {
    for (const char* fmt : {"json", "text"}) {
        Request req;
        req.command = "cohomology";
        req.family = 'B';
        req.rank = 3;
        req.sigma_1based = {1, 2};
        req.format = std::string(fmt) == "json" ? OutputFormat::json : OutputFormat::text;
        Report a = run(req);
        Report b = run(req);
        REQUIRE(a.text == b.text);
        REQUIRE(a.payload.dump() == b.payload.dump());
    }
    Request req;
    req.command = "sym";
    req.case_id = "IIIc7";
    req.format = OutputFormat::json;
    REQUIRE(run(req).text == run(req).text);
}

TEST_CASE("markdown format renders tables") {
    Request req;
    req.command = "cohomology";
    req.family = 'B';
    req.rank = 3;
    req.sigma_1based = {1, 2};
    req.format = OutputFormat::markdown;
    Report rep = run(req);
    REQUIRE(rep.exit_code == 0);
    REQUIRE(rep.text.find("| s21 | 1 | -2 | torsion | 6w1 |") != std::string::npos);
    REQUIRE(rep.text == run(req).text);

    Request mreq;
    mreq.command = "monge";
    mreq.family = 'C';
    mreq.rank = 3;
    mreq.enumerate = true;
    mreq.format = OutputFormat::markdown;
    Report mrep = run(mreq);
    REQUIRE(mrep.text.find("| {2,3} | 3 | no |") != std::string::npos);
}

TEST_CASE("json round-trip") {
    Request req;
    req.command = "realize";
    req.case_id = "IIId";
    req.format = OutputFormat::json;
    Report rep = run(req);
    auto parsed = nlohmann::json::parse(rep.text);
    REQUIRE(parsed == rep.payload);
    REQUIRE(parsed.dump(2) + "\n" == rep.text);
}

TEST_CASE("reproduce-tables against the golden files") {
    Request req;
    req.command = "reproduce-tables";
    req.golden_dir = std::string(PARMONGE_SOURCE_DIR) + "/data/golden";
    req.format = OutputFormat::text;
    Report rep = run(req);
    INFO(rep.text);
    REQUIRE(rep.exit_code == 0);
    REQUIRE(rep.payload["result"]["all_pass"] == true);
    // every table accounted for
    REQUIRE(rep.payload["result"]["tables"].size() == tables::table_names().size());

    SECTION("a mismatch is reported with a diff and exit 2") {
        Request bad = req;
        bad.golden_dir = "/nonexistent";
        Report r2 = run(bad);
        REQUIRE(r2.exit_code == 2);
    }
}
