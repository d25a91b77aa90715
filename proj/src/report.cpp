#include "ioa/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

namespace ioa {

using ojson = nlohmann::ordered_json;

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

CheckStatus status_from(const std::string& s) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    return CheckStatus::Skipped;
}

ojson entry_to_json(const CheckEntry& e) {
    ojson j;
    j["axiom"] = e.axiom;
    j["status"] = status_name(e.status);
    j["detail"] = e.detail;
    if (e.witness) {
        ojson w;
        std::vector<std::string> exps;
        for (const auto& r : e.witness->exponents) exps.push_back(rat_to_string(r));
        w["exponents"] = exps;
        w["location"] = e.witness->location;
        w["expected"] = e.witness->expected;
        w["actual"] = e.witness->actual;
        j["witness"] = w;
    }
    return j;
}

CheckEntry entry_from_json(const ojson& j) {
    CheckEntry e;
    e.axiom = j.at("axiom").get<std::string>();
    e.status = status_from(j.at("status").get<std::string>());
    e.detail = j.at("detail").get<std::string>();
    if (j.contains("witness")) {
        Witness w;
        for (const auto& s : j.at("witness").at("exponents")) w.exponents.push_back(rat_from_string(s));
        w.location = j.at("witness").at("location").get<std::string>();
        w.expected = j.at("witness").at("expected").get<std::string>();
        w.actual = j.at("witness").at("actual").get<std::string>();
        e.witness = w;
    }
    return e;
}

ojson report_to_json(const CheckReport& r) {
    ojson j;
    j["suite"] = r.suite;
    j["window"] = r.window;
    j["entries"] = ojson::array();
    for (const auto& e : r.entries) j["entries"].push_back(entry_to_json(e));
    return j;
}

CheckReport report_from_json(const ojson& j) {
    CheckReport r;
    r.suite = j.at("suite").get<std::string>();
    r.window = j.at("window").get<std::string>();
    for (const auto& e : j.at("entries")) r.entries.push_back(entry_from_json(e));
    return r;
}

}  // namespace

std::string report_to_text(const CheckReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite << " (window " << r.window << "): "
       << (r.passed() ? "PASS" : "FAIL") << ", " << r.entries.size() << " checks, " << r.failures()
       << " failed, " << r.skips() << " skipped\n";
    for (const auto& e : r.entries) {
        os << "  [" << status_name(e.status) << "] " << e.axiom;
        if (!e.detail.empty()) os << " -- " << e.detail;
        os << "\n";
        if (e.witness) {
            os << "      at " << e.witness->location << " exponents (";
            for (size_t i = 0; i < e.witness->exponents.size(); ++i)
                os << (i ? "," : "") << rat_to_string(e.witness->exponents[i]);
            os << "): expected " << e.witness->expected << ", got " << e.witness->actual << "\n";
        }
    }
    return os.str();
}

std::string report_to_structured(const CheckReport& r) { return report_to_json(r).dump(2) + "\n"; }

CheckReport report_from_structured(const std::string& text) {
    return report_from_json(ojson::parse(text));
}

std::string reports_to_structured(const std::vector<CheckReport>& rs) {
    ojson j = ojson::array();
    for (const auto& r : rs) j.push_back(report_to_json(r));
    return j.dump(2) + "\n";
}

std::vector<CheckReport> reports_from_structured(const std::string& text) {
    std::vector<CheckReport> out;
    for (const auto& j : ojson::parse(text)) out.push_back(report_from_json(j));
    return out;
}

}  // namespace ioa
