#pragma once

#include "engelfn/family.hpp"

#include <string>
#include <vector>

namespace engelfn::cli {

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Runs the invariant battery against one family. `full` raises the sweep
/// sizes and adds the sampling/integral cross-checks.
std::vector<SuiteResult> run_checks(const FamilySpec& fam, bool full);

}  // namespace engelfn::cli
