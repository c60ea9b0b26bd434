// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fourl/suite.hpp"

int main(int argc, char** argv) {
    fourl::SuiteOptions opt;
    for (int i = 1; i < argc; ++i) opt.only.emplace_back(argv[i]);
    int failed = 0;
    try {
        fourl::runSuite(opt, [&](const fourl::CriterionResult& r) {
            std::printf("%s\n", fourl::formatCriterionLine(r).c_str());
            std::fflush(stdout);
            if (!r.pass || !r.withinBudget()) ++failed;
        });
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 2;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
