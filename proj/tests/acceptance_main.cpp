// Acceptance gate runner: one line per criterion, nonzero exit on failure.

#include <cstdio>

#include "acceptance_suite.hpp"

int main() {
    int failures = 0;
    const auto results = acceptance::run_acceptance_suite([&](const acceptance::CriterionResult& r) {
        std::printf("[%s] %d %s (%.2fs, budget %.0fs) %s\n", r.pass ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.seconds, r.budget_seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass)
            ++failures;
    });
    if (failures == 0) {
        std::printf("all %zu criteria passed\n", results.size());
        return 0;
    }
    std::printf("%d of %zu criteria failed\n", failures, results.size());
    return 1;
}
