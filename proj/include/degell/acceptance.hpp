#ifndef DEGELL_ACCEPTANCE_HPP
#define DEGELL_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace degell {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool gating = true;  // the Liouville probe is evidence, not a gate
    double seconds = 0.0;
    std::string detail;
};

/// Runs the release checklist. `tol_scale` multiplies every tolerance
/// (exploratory runs only; 1.0 is the contract).
std::vector<CriterionResult> run_acceptance(double tol_scale = 1.0, std::uint64_t seed = 42);

/// True when every gating criterion passed.
bool acceptance_passed(const std::vector<CriterionResult>& results);

}  // namespace degell

#endif
