#pragma once

#include <string>
#include <vector>

#include "bounds.hpp"
#include "json_fwd.hpp"

namespace dendron {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;   // human-readable summary or counterexample witness
    std::string replay;   // CLI invocation reproducing the check
};

// A suite report. The JSON rendering is a pure function of the suite name,
// bounds and check outcomes, so replaying a suite with the same bounds gives
// byte-identical output; wall time appears only in the human rendering.
struct VerificationReport {
    std::string suite;
    Bounds bounds;
    std::vector<CheckResult> checks;

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }
    void add(const std::string& name, bool pass, const std::string& detail = "",
             const std::string& replay = "");

    nlohmann::json to_json() const;
    std::string human(double wall_ms) const;
};

}  // namespace dendron
