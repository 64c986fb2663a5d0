#pragma once

#include <cstdint>

#include "voa/zhu.hpp"

namespace voa {

struct SuiteConfig {
    std::vector<std::vector<long>> gram;
    std::string suite;
    int cutoff = 8;
    int samples = 200;
    std::uint64_t seed = 1;
};

struct CheckResult {
    std::string id;
    std::string anchor;   // pointer into the source material
    std::string expected; // exact value with provenance
    std::string computed;
    bool pass = false;
    std::string note; // set when a printed value was corrected or flagged
};

struct VerifyReport {
    std::string suite;
    std::vector<std::vector<long>> gram;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool pass = false;
    double seconds = 0; // not serialized; reports are byte-stable per seed
};

// Closed suite catalog.
const std::vector<std::string>& suite_names();

VerifyReport run_suite(const SuiteConfig& config);

// Census of irreducible module top levels with pairwise inequivalence
// witnesses (an element whose o-action traces differ).
struct CensusWitness {
    int i = 0, j = 0;
    std::string element;
    std::string invariant_i, invariant_j;
};
struct CensusReport {
    std::vector<std::vector<long>> gram;
    std::vector<std::string> modules;
    std::vector<int> top_dims;
    std::vector<CensusWitness> witnesses;
    bool pass = false;
};
CensusReport enumerate_modules(const std::vector<std::vector<long>>& gram);
bool replay_census_witnesses(const CensusReport& report);

std::string report_json(const VerifyReport& r);
std::string report_markdown(const VerifyReport& r);
std::string census_json(const CensusReport& r);
std::string census_markdown(const CensusReport& r);

} // namespace voa
