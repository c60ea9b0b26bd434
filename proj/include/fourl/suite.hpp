#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fourl/report.hpp"

namespace fourl {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int workers = 0;
    std::vector<std::string> only;  // empty: every criterion
};

struct CriterionResult {
    std::string name;
    bool pass = false;        // the mathematical assertion
    std::string summary;      // one line, deterministic
    json details = json::object();
    double seconds = 0.0;
    double budgetSeconds = 0.0;
    bool withinBudget() const { return seconds <= budgetSeconds; }
};

struct CriterionInfo {
    std::string name;
    std::string description;
    double budgetSeconds;
};
const std::vector<CriterionInfo>& suiteCriteria();

// UsageError for an unknown name.
CriterionResult runCriterion(const std::string& name, const SuiteOptions& opt);
// Runs the selected criteria in table order; onDone is called after each one.
std::vector<CriterionResult> runSuite(const SuiteOptions& opt,
                                      const std::function<void(const CriterionResult&)>& onDone = {});

// "PASS name (1.2s): summary"
std::string formatCriterionLine(const CriterionResult& r);

}  // namespace fourl
