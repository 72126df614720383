// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * Structured pass/fail record shared by the CLI and the acceptance runner.
 * JSON keys are emitted in declaration order so reports are byte-stable.
 */

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace nc {

inline constexpr char const* kVersion = "0.1.0";

struct Check {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
};

struct VerificationReport {
    std::string command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    std::vector<Check> checks;
    std::int64_t runtime_ms = 0;
    std::string version = kVersion;

    /// Records `lhs <= rhs + tolerance`.
    Check& check_le(std::string name, double lhs, double rhs, double tolerance = 0.0) {
        bool const ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + tolerance;
        checks.push_back({std::move(name), ok, lhs, rhs, tolerance});
        return checks.back();
    }

    /// Records `|lhs - rhs| <= tolerance`.
    Check& check_near(std::string name, double lhs, double rhs, double tolerance) {
        bool const ok = std::isfinite(lhs) && std::isfinite(rhs) && std::fabs(lhs - rhs) <= tolerance;
        checks.push_back({std::move(name), ok, lhs, rhs, tolerance});
        return checks.back();
    }

    /// Records a boolean outcome as lhs = 1/0 against rhs = 1.
    Check& check_true(std::string name, bool ok) {
        checks.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, 0.0});
        return checks.back();
    }

    bool all_pass() const {
        for (auto const& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::size_t failures() const {
        std::size_t n = 0;
        for (auto const& c : checks) n += !c.pass;
        return n;
    }

    void merge(VerificationReport const& other) {
        for (auto const& c : other.checks) checks.push_back(c);
        for (auto const& r : other.results) results.push_back(r);
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["params"] = params;
        j["results"] = results;
        j["checks"] = nlohmann::ordered_json::array();
        for (auto const& c : checks) {
            nlohmann::ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["lhs"] = c.lhs;
            cj["rhs"] = c.rhs;
            cj["tolerance"] = c.tolerance;
            j["checks"].push_back(cj);
        }
        j["runtime_ms"] = runtime_ms;
        j["version"] = version;
        return j;
    }

    /// One row per check.
    std::string to_csv() const {
        std::ostringstream os;
        os << "name,pass,lhs,rhs,tolerance\n";
        os << std::setprecision(17);
        for (auto const& c : checks) {
            std::string name = c.name;
            bool const quote = name.find_first_of(",\"\n") != std::string::npos;
            if (quote) {
                std::string q = "\"";
                for (char ch : name) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                name = q + "\"";
            }
            os << name << ',' << (c.pass ? "true" : "false") << ',' << c.lhs << ',' << c.rhs << ',' << c.tolerance << '\n';
        }
        return os.str();
    }
};

} // namespace nc
