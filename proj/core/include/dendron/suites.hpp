#pragma once

#include <string>
#include <vector>

#include "bounds.hpp"
#include "report.hpp"

namespace dendron {

struct SuiteInfo {
    std::string name;
    std::string description;
};

std::vector<SuiteInfo> suite_registry();

// Runs a registered suite at the given bounds. Throws InvalidInput with the
// list of registered suites when the name is unknown. Reports are
// deterministic for fixed bounds.
VerificationReport run_suite(const std::string& name, const Bounds& bounds);

}  // namespace dendron
