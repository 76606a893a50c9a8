#include "dendron/report.hpp"

#include <json.hpp>

#include <sstream>

namespace dendron {

int VerificationReport::passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
}

int VerificationReport::failed() const {
    return static_cast<int>(checks.size()) - passed();
}

void VerificationReport::add(const std::string& name, bool pass, const std::string& detail,
                             const std::string& replay) {
    checks.push_back({name, pass, detail, replay});
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "dendron-report/1";
    j["suite"] = suite;
    j["bounds"] = bounds.to_json();
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        if (!c.pass && !c.replay.empty()) e["replay"] = c.replay;
        cs.push_back(e);
    }
    j["checks"] = cs;
    j["passed"] = passed();
    j["failed"] = failed();
    return j;
}

std::string VerificationReport::human(double wall_ms) const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) os << "  -- " << c.detail;
        os << "\n";
        if (!c.pass && !c.replay.empty()) os << "         replay: " << c.replay << "\n";
    }
    os << "  " << passed() << "/" << checks.size() << " checks passed";
    os << "  (" << wall_ms << " ms)\n";
    return os.str();
}

}  // namespace dendron
