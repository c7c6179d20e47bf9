#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slater/parallel.hpp"

namespace slater {

enum class Check { abs, rel, factor, at_most };

struct Measurement {
    std::string label;
    double actual = 0.0;
    double expected = 0.0;
    double tol = 0.0;
    Check kind = Check::abs;
};

bool judge(const Measurement& m);
std::string describe(const Measurement& m, int digits = 9);

struct GoldenCase {
    int criterion = 0;  // 0 for informational cases
    std::string name;
    std::string title;
    std::function<std::vector<Measurement>()> run;
};

struct CaseResult {
    int criterion = 0;
    std::string name;
    std::string title;
    bool passed = false;
    std::vector<Measurement> measurements;
    std::string error;
};

std::vector<GoldenCase> golden_cases();
CaseResult evaluate(const GoldenCase& c);
// cases whose name contains filter (all when empty), in declaration order
std::vector<CaseResult> run_golden(const std::string& filter = {}, Execution ex = Execution::serial);

}  // namespace slater
