#pragma once

#include <string>
#include <vector>

#include "stringforge/runconfig.hpp"

namespace stringforge {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    std::vector<std::string> only;  // empty = everything
    int unwind_m = 5;
    int motzkin_weight = 3;
    int motzkin_j = 12;
    int identity_j = 10;
    uint64_t seed = 20250808;
};

// Named property suites: table, motzkin, unwinding, identities, backsub,
// grading, closedform, oracle, crossmode, rings.
std::vector<PropertyResult> run_verify_suite(const VerifyOptions& opts);

}  // namespace stringforge
