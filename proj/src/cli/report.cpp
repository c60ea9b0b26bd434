#include "fourl/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "fourl/errors.hpp"

namespace fourl {

json toJson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx cplxFromJson(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) throw UsageError("complex value needs re and im");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json toJson(const Quadruple& Q) {
    json ids = json::array();
    for (const auto& c : Q.chi) ids.push_back(c.id());
    return json{{"q", Q.q}, {"D", Q.D}, {"chi", ids}, {"t", Q.t}, {"ell", Q.ell}};
}

Quadruple quadrupleFromJson(const json& j) {
    Quadruple Q;
    try {
        Q.q = j.at("q").get<i64>();
        Q.D = j.at("D").get<std::array<i64, 4>>();
        const auto ids = j.at("chi").get<std::array<std::string, 4>>();
        for (int r = 0; r < 4; ++r) Q.chi[r] = characterFromId(ids[r]);
        Q.t = j.at("t").get<double>();
        Q.ell = j.at("ell").get<std::array<i64, 2>>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("quadruple: ") + e.what());
    }
    Q.validate();
    return Q;
}

json toJson(const MomentReport& r) {
    json swaps = json::array();
    const auto& labels = SixTerms::labels();
    for (int i = 0; i < 5; ++i) swaps.push_back(json{{"label", labels[i + 1]}, {"value", toJson(r.swapTerms[i])}});
    return json{{"quadruple", toJson(r.quadruple)},
                {"bruteForce", toJson(r.bruteForce)},
                {"diagonal", json{{"label", labels[0]}, {"value", toJson(r.diagonalTerm)}}},
                {"swapTerms", swaps},
                {"prediction", toJson(r.prediction)},
                {"residual", toJson(r.residual)},
                {"relResidual", std::abs(r.prediction) > 0 ? std::abs(r.residual) / std::abs(r.prediction) : 0.0},
                {"afeTolerance", r.afeTolerance},
                {"characterCount", r.characterCount},
                {"method", r.method}};
}

MomentReport momentReportFromJson(const json& j) {
    MomentReport r;
    try {
        r.quadruple = quadrupleFromJson(j.at("quadruple"));
        r.bruteForce = cplxFromJson(j.at("bruteForce"));
        r.diagonalTerm = cplxFromJson(j.at("diagonal").at("value"));
        const auto& sw = j.at("swapTerms");
        if (sw.size() != 5) throw UsageError("moment report needs five swap terms");
        for (int i = 0; i < 5; ++i) r.swapTerms[i] = cplxFromJson(sw.at(i).at("value"));
        r.prediction = cplxFromJson(j.at("prediction"));
        r.residual = cplxFromJson(j.at("residual"));
        r.afeTolerance = j.at("afeTolerance").get<double>();
        r.characterCount = j.at("characterCount").get<int>();
        r.method = j.at("method").get<std::string>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("moment report: ") + e.what());
    }
    return r;
}

json toJson(const DetScanRecord& r) {
    json j{{"D", r.D}, {"chi", r.ids}, {"qResidue", r.qResidue}, {"vacuous", r.vacuous}};
    if (!r.vacuous) {
        j["detModulus"] = r.detModulus;
        j["derivedDetModulus"] = r.derivedDetModulus;
        j["entryMismatch"] = r.entryMismatch;
        j["escalated"] = r.escalated;
    }
    return j;
}

void sortDetScan(std::vector<DetScanRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const DetScanRecord& a, const DetScanRecord& b) {
        return std::tie(a.D, a.ids, a.qResidue) < std::tie(b.D, b.ids, b.qResidue);
    });
}

json tagged(json record, const std::string& anchor, const std::string& provenance) {
    record["paperAnchor"] = anchor;
    record["provenanceTag"] = provenance;
    return record;
}

void Report::fail(const std::string& why) {
    pass = false;
    failures.push_back(why);
}

json Report::toJson() const {
    return json{{"schema", kReportSchema}, {"command", command}, {"seed", seed},  {"config", config},
                {"pass", pass},            {"failures", failures}, {"records", records}};
}

std::string Report::dump() const { return toJson().dump(2) + "\n"; }

std::string momentCsvHeader() { return "q,D1,D2,D3,D4,t,|bruteforce|,|prediction|,relResidual"; }

std::string momentCsvRow(const MomentReport& r) {
    const auto& Q = r.quadruple;
    char buf[256];
    const double pred = std::abs(r.prediction);
    std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g,%.17g", static_cast<long long>(Q.q),
                  static_cast<long long>(Q.D[0]), static_cast<long long>(Q.D[1]), static_cast<long long>(Q.D[2]),
                  static_cast<long long>(Q.D[3]), Q.t, std::abs(r.bruteForce), pred,
                  pred > 0 ? std::abs(r.residual) / pred : 0.0);
    return buf;
}

std::string momentCsv(const std::vector<MomentReport>& rows) {
    std::string out = momentCsvHeader() + "\n";
    for (const auto& r : rows) out += momentCsvRow(r) + "\n";
    return out;
}

void writeTextFile(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw UsageError("write to '" + path + "' failed");
}

std::string readTextFile(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace fourl
