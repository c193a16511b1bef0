#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heavenly/ah.hpp"
#include "heavenly/polyfield.hpp"
#include "heavenly/report.hpp"

namespace heavenly {

// Options shared by the CLI check suites.
struct SuiteOptions {
    std::uint64_t seed = 1;
    int order = 2;              // series truncation
    std::string potential = "flat";
    std::string params_file;    // ansatz parameter JSON, when a suite needs one
};

// Resolve a potential by fixture name ("flat", "flat-plus-holo", "scaled") or
// by path to a file holding the polynomial text grammar.  ConfigError when
// the name is unknown and no such file exists.
PolyField resolve_potential(const std::string& name_or_path);

Report run_verify_brackets(const SuiteOptions& opts);
Report run_verify_heavenly(const SuiteOptions& opts);
Report run_solve_first_order(const SuiteOptions& opts);
Report run_verify_pipeline(const SuiteOptions& opts);
Report run_ah_sweep(const SuiteOptions& opts, std::vector<SweepRow>* rows_out);
Report run_ah_deformed(const SuiteOptions& opts);

}  // namespace heavenly
