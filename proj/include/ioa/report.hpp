#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ioa/rational.hpp"

namespace ioa {

enum class CheckStatus { Pass, Fail, Skipped };

struct Witness {
    std::vector<Rat> exponents;  // full exponent tuple of the first violating coefficient
    std::string location;        // indices / states, human-readable but stable
    std::string expected;
    std::string actual;
};

struct CheckEntry {
    std::string axiom;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;  // reason for skips, mode notes ("strict", "unit-normalized")
    std::optional<Witness> witness;
};

struct CheckReport {
    std::string suite;
    std::string window;
    std::vector<CheckEntry> entries;

    bool passed() const {
        for (const auto& e : entries)
            if (e.status == CheckStatus::Fail) return false;
        return true;
    }
    long failures() const {
        long n = 0;
        for (const auto& e : entries) n += e.status == CheckStatus::Fail;
        return n;
    }
    long skips() const {
        long n = 0;
        for (const auto& e : entries) n += e.status == CheckStatus::Skipped;
        return n;
    }
    void pass(const std::string& axiom, const std::string& detail = "") {
        entries.push_back({axiom, CheckStatus::Pass, detail, std::nullopt});
    }
    void fail(const std::string& axiom, Witness w, const std::string& detail = "") {
        entries.push_back({axiom, CheckStatus::Fail, detail, std::move(w)});
    }
    void skip(const std::string& axiom, const std::string& reason) {
        entries.push_back({axiom, CheckStatus::Skipped, reason, std::nullopt});
    }
};

std::string report_to_text(const CheckReport& r);
std::string report_to_structured(const CheckReport& r);                 // stable JSON
CheckReport report_from_structured(const std::string& json_text);       // round-trip
std::string reports_to_structured(const std::vector<CheckReport>& rs);  // aggregated
std::vector<CheckReport> reports_from_structured(const std::string& json_text);

}  // namespace ioa
