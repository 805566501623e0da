#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dh {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;  // counts on success, the first failures otherwise
    double seconds = 0;
};

struct AcceptanceOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    std::uint32_t seed = 20240611;
};

constexpr int kCriterionCount = 8;
const std::string& criterionTitle(int id);
// Runs one acceptance criterion (1..8); never throws for computational failures.
CriterionResult runCriterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& opts = {});

}  // namespace dh
