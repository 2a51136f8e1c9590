#pragma once

#include "zerocount/kernel.hpp"

#include <string>
#include <vector>

namespace zc {

struct CertifyConfig {
    Params params;
    int head_cutoff = 79;
    int scan_steps = 10000;
    int jobs = 1;
    std::string zero_table_path; // empty: skip the validation stage
};

struct StageResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail; // human-readable summary line
};

struct CertifyReport {
    std::vector<StageResult> stages;
    bool all_pass = false;
    std::string first_failure; // stage name, empty when all_pass
};

// Runs every verification stage in dependency order: kernel certificate,
// reference-envelope closure, gamma residual scan, s(s-1) values, prime
// sums and reduction, constant assembly, and (when a zero table is
// configured) the corollary validation.
CertifyReport full_certify(const CertifyConfig& cfg);

// Deterministic JSON rendering of the report (stable key order, no
// timestamps or environment data).
std::string certify_report_json(const CertifyReport& report, const CertifyConfig& cfg);

} // namespace zc
