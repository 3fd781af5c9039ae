// Release checklist runner: one line per criterion, nonzero exit when a
// gating criterion fails.
#include <cstdio>

#include "degell/acceptance.hpp"

int main() {
    const auto results = degell::run_acceptance();
    for (const auto& r : results) {
        std::printf("[%s] %2d %-36s (%.2fs) %s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str(),
                    r.gating ? "" : " [non-gating]");
    }
    const bool ok = degell::acceptance_passed(results);
    std::printf("%s\n", ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED");
    return ok ? 0 : 1;
}
