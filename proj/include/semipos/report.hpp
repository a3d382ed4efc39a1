#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace semipos {

// One named check inside a machine-readable report.
struct CheckRecord {
    std::string name;
    bool passed = false;
    double value = 0.0;
    std::optional<double> expected;
    std::optional<double> slack;  // distance to the tolerance boundary

    static CheckRecord at_least(const std::string& name, double value, double bound) {
        return {name, value >= bound, value, bound, value - bound};
    }
    static CheckRecord at_most(const std::string& name, double value, double bound) {
        return {name, value <= bound, value, bound, bound - value};
    }
    static CheckRecord equals(const std::string& name, bool ok, double value,
                              std::optional<double> expected = std::nullopt) {
        return {name, ok, value, expected, std::nullopt};
    }
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
    std::vector<CheckRecord> checks;
    double runtime_seconds = 0.0;

    void add(CheckRecord record) { checks.push_back(std::move(record)); }
    bool all_passed() const;
    int exit_code() const { return all_passed() ? 0 : 1; }

    // Deterministic JSON: schema tag, checks sorted by name, the runtime field
    // excluded from the byte-identity contract.
    nlohmann::ordered_json to_json() const;
    // One "PASS name value" / "FAIL ..." line per check.
    std::string to_text() const;
};

}  // namespace semipos
