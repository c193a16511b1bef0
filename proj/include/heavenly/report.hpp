#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace heavenly {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::string witness;
    std::string tolerance = "exact";
};

struct Report {
    std::string command;
    nlohmann::json config;  // echoed options, including the seed
    std::vector<CheckRecord> checks;
    nlohmann::json result;  // command-specific payload, may be null
    double wall_ms = 0.0;

    void add(const std::string& name, bool pass, const std::string& witness,
             const std::string& tolerance = "exact");
    bool all_pass() const;
    nlohmann::json to_json() const;
};

}  // namespace heavenly
