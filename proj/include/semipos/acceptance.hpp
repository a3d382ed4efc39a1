#pragma once

#include "semipos/report.hpp"

namespace semipos {

enum class SuiteLevel { quick, full };

struct CriterionResult {
    int index = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    std::vector<CheckRecord> checks;
};

struct AcceptanceResult {
    std::vector<CriterionResult> criteria;
    bool all_passed = false;
    double seconds = 0.0;

    Report to_report(const std::string& command, std::uint64_t seed) const;
};

// The full verification battery: exact class numbers, the pushforward
// identity, the Hopf solver and appendix matrices, Gauduchon and
// semi-positivity scans, the extremal-direction lemma suites, engine
// oracles, tautological positivity and the relative tangent bound.  `quick`
// shrinks sample counts; `full` runs the documented sizes.
AcceptanceResult run_acceptance(SuiteLevel level, std::uint64_t seed = 2024);

}  // namespace semipos
