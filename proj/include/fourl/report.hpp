#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fourl/moments.hpp"

namespace fourl {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "fourl-report/1";

// Complex values are stored as {"re": x, "im": y}.
json toJson(cplx z);
cplx cplxFromJson(const json& j);

json toJson(const Quadruple& Q);
Quadruple quadrupleFromJson(const json& j);

json toJson(const MomentReport& r);
MomentReport momentReportFromJson(const json& j);

json toJson(const DetScanRecord& r);
// Lexicographic by (D, character ids, qResidue).
void sortDetScan(std::vector<DetScanRecord>& records);

// Adds the two citation strings every record carries.
json tagged(json record, const std::string& anchor, const std::string& provenance);

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    json config = json::object();   // resolved parameters, workers excluded
    json records = json::array();
    bool pass = true;
    std::vector<std::string> failures;  // one line per failed assertion

    void fail(const std::string& why);
    json toJson() const;
    // Two-space indented JSON with a trailing newline.
    std::string dump() const;
};

std::string momentCsvHeader();
std::string momentCsvRow(const MomentReport& r);
std::string momentCsv(const std::vector<MomentReport>& rows);

// UsageError when the file cannot be written or read.
void writeTextFile(const std::string& path, const std::string& text);
std::string readTextFile(const std::string& path);

}  // namespace fourl
