#include "heavenly/report.hpp"

namespace heavenly {

void Report::add(const std::string& name, bool pass, const std::string& witness,
                 const std::string& tolerance) {
    checks.push_back({name, pass, witness, tolerance});
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& c : checks)
        jc.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"witness", c.witness},
                      {"tolerance", c.tolerance}});
    nlohmann::json j{{"schema", kReportSchema},
                     {"tool_version", kToolVersion},
                     {"command", command},
                     {"config", config},
                     {"checks", jc},
                     {"all_pass", all_pass()},
                     {"wall_ms", wall_ms}};
    if (!result.is_null()) j["result"] = result;
    return j;
}

}  // namespace heavenly
