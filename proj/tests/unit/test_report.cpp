#include "doctest.h"

#include <cstdio>
#include <sstream>

#include "fourl/errors.hpp"
#include "fourl/report.hpp"
#include "fourl/suite.hpp"

using namespace fourl;

TEST_CASE("complex values serialize as re/im") {
    const json j = toJson(cplx(1.5, -0.25));
    CHECK(j.dump() == R"({"re":1.5,"im":-0.25})");
    CHECK(cplxFromJson(j) == cplx(1.5, -0.25));
    CHECK_THROWS_AS(cplxFromJson(json{{"re", 1.0}}), UsageError);
}

TEST_CASE("moment report round-trip") {
    BruteForceOptions o;
    o.method = MomentMethod::Hurwitz;
    const auto r = momentReport(makeQuadruple(29, {1, 5, 7, 13}, 0.3, {2, 3}), o);
    const json j = toJson(r);
    CHECK(j["swapTerms"].size() == 5);
    CHECK(j["diagonal"]["label"] == "diagonal");
    const auto back = momentReportFromJson(json::parse(j.dump()));
    CHECK(back.bruteForce == r.bruteForce);
    CHECK(back.diagonalTerm == r.diagonalTerm);
    for (int i = 0; i < 5; ++i) CHECK(back.swapTerms[i] == r.swapTerms[i]);
    CHECK(back.prediction == r.prediction);
    CHECK(back.residual == r.residual);
    CHECK(back.method == r.method);
    CHECK(back.characterCount == r.characterCount);
    for (int k = 0; k < 4; ++k) CHECK(back.quadruple.chi[k] == r.quadruple.chi[k]);
    CHECK(back.quadruple.t == r.quadruple.t);
    CHECK(toJson(back).dump() == j.dump());
}

TEST_CASE("CSV residual table") {
    BruteForceOptions o;
    o.method = MomentMethod::Hurwitz;
    const auto r = momentReport(makeQuadruple(29, {1, 5, 7, 13}, 0.0, {1, 1}), o);
    const std::string csv = momentCsv({r});
    std::istringstream is(csv);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "q,D1,D2,D3,D4,t,|bruteforce|,|prediction|,relResidual");
    CHECK(row.rfind("29,1,5,7,13,0,", 0) == 0);
}

TEST_CASE("det-scan ordering") {
    std::vector<DetScanRecord> recs(3);
    recs[0].D = {1, 5, 7, 11};
    recs[0].ids = {"1:", "5:2", "7:4", "11:2"};
    recs[0].qResidue = 9;
    recs[1] = recs[0];
    recs[1].qResidue = 2;
    recs[2] = recs[0];
    recs[2].D = {1, 3, 5, 7};
    sortDetScan(recs);
    CHECK(recs[0].D[1] == 3);
    CHECK(recs[1].qResidue == 2);
    CHECK(recs[2].qResidue == 9);
}

TEST_CASE("report envelope") {
    Report rep;
    rep.command = "moment";
    rep.seed = 7;
    rep.records.push_back(tagged(json{{"x", 1}}, "anchor", "computed"));
    const json j = rep.toJson();
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["seed"] == 7);
    CHECK(j["records"][0]["paperAnchor"] == "anchor");
    CHECK(j["records"][0]["provenanceTag"] == "computed");
    CHECK(j["pass"] == true);
    rep.fail("x");
    CHECK(rep.toJson()["pass"] == false);
    CHECK(rep.dump() == rep.dump());
}

TEST_CASE("suite runner") {
    CHECK(suiteCriteria().size() == 13);
    SuiteOptions opt;
    opt.only = {"orthogonality", "twisted-multiplicativity"};
    const auto res = runSuite(opt);
    REQUIRE(res.size() == 2);
    for (const auto& r : res) {
        CHECK(r.pass);
        CHECK(formatCriterionLine(r).rfind("PASS ", 0) == 0);
    }
    // records do not depend on the worker count
    opt.only = {"identities"};
    opt.workers = 1;
    const auto a = runSuite(opt);
    opt.workers = 3;
    const auto b = runSuite(opt);
    CHECK(a[0].details.dump() == b[0].details.dump());
    opt.only = {"no-such-criterion"};
    CHECK_THROWS_AS(runSuite(opt), UsageError);
}

TEST_CASE("file IO errors") {
    CHECK_THROWS_AS(writeTextFile("/nonexistent-dir/x.json", "{}"), UsageError);
    CHECK_THROWS_AS(readTextFile("/nonexistent-dir/x.json"), UsageError);
}
