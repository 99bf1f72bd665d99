#pragma once

#include <string>
#include <vector>

namespace dcurve {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double ms = 0.0;
};

/// Runs the verification suite: closed-form anchors, bound sandwiches,
/// rate/order checks, and the seeded Monte Carlo gates. `fast` shrinks the
/// Monte Carlo scale and grid resolutions for a sub-minute smoke run; the
/// full suite uses the gate-level scales.
std::vector<CriterionResult> run_acceptance(bool fast);

}  // namespace dcurve
