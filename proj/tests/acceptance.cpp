// One line per acceptance criterion; exits nonzero if any fails.
#include <cstdio>
#include <string>

#include "slater/golden.hpp"

using namespace slater;

int main(int argc, char** argv)
{
    bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    int failed = 0;
    for (const auto& r : run_golden({}, Execution::parallel)) {
        if (r.criterion == 0) {
            std::printf("info         %-30s %s\n", r.name.c_str(), r.passed ? "pass" : "fail");
            continue;
        }
        std::printf("criterion %d  %-30s %s\n", r.criterion, r.name.c_str(), r.passed ? "PASS" : "FAIL");
        if (!r.passed) ++failed;
        if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
        for (const auto& m : r.measurements)
            if (verbose || !judge(m)) std::printf("    %s %s\n", judge(m) ? "ok  " : "FAIL", describe(m).c_str());
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
