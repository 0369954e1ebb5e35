// Acceptance suite: one pass/fail line per reproduction criterion.
// Exit code is the number of failed criteria.

#include <cstdio>

#include "iondistill/reproduction.hpp"

int main() {
    const auto results = iondistill::run_acceptance_suite();
    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::printf("[%s] %d. %s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL", r.index, r.name.c_str(),
                    r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failures);
    return failures;
}
