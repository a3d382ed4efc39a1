#include "semipos/report.hpp"

#include <algorithm>
#include <sstream>

namespace semipos {

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckRecord& c) { return c.passed; });
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json out;
    out["schema"] = 1;
    out["command"] = command;
    out["seed"] = seed;
    out["tolerances"] = tolerances;
    std::vector<CheckRecord> sorted = checks;
    std::sort(sorted.begin(), sorted.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckRecord& c : sorted) {
        nlohmann::ordered_json rec;
        rec["name"] = c.name;
        rec["status"] = c.passed ? "pass" : "fail";
        rec["value"] = c.value;
        if (c.expected) rec["expected"] = *c.expected;
        if (c.slack) rec["slack"] = *c.slack;
        arr.push_back(std::move(rec));
    }
    out["checks"] = std::move(arr);
    out["passed"] = all_passed();
    out["runtime_seconds"] = runtime_seconds;
    return out;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os.precision(12);
    for (const CheckRecord& c : checks) {
        os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  value=" << c.value;
        if (c.expected) os << "  bound=" << *c.expected;
        os << "\n";
    }
    return os.str();
}

}  // namespace semipos
