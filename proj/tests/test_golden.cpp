#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "near.hpp"

#include <set>

#include "slater/golden.hpp"

using namespace slater;

TEST_CASE("every criterion has a case")
{
    std::set<int> seen;
    for (const auto& c : golden_cases()) seen.insert(c.criterion);
    for (int k = 1; k <= 9; ++k) CHECK(seen.count(k) == 1);
}

TEST_CASE("judge")
{
    CHECK(judge({"x", 1.0, 1.05, 0.1, Check::abs}));
    CHECK_FALSE(judge({"x", 1.0, 1.2, 0.1, Check::abs}));
    CHECK(judge({"x", 100.0, 101.0, 0.02, Check::rel}));
    CHECK(judge({"x", 3.0, 2.0, 2.0, Check::factor}));
    CHECK_FALSE(judge({"x", 5.0, 2.0, 2.0, Check::factor}));
    CHECK(judge({"x", 1e-13, 0.0, 1e-12, Check::at_most}));
    CHECK_FALSE(judge({"x", NAN, 0.0, 1e-12, Check::at_most}));
}

TEST_CASE("perturbed expectations fail")
{
    // shifting each expected value by 1e-2 must break every passing check
    // (abs and rel checks only; the bound and factor checks are not sharp)
    for (const auto& c : golden_cases()) {
        auto r = evaluate(c);
        for (auto m : r.measurements) {
            if (!judge(m) || (m.kind != Check::abs && m.kind != Check::rel)) continue;
            if (m.tol >= 5e-3) continue;
            CAPTURE(c.name);
            CAPTURE(m.label);
            m.expected += m.kind == Check::rel ? 1e-2 * std::abs(m.expected) : 1e-2;
            CHECK_FALSE(judge(m));
        }
    }
}

TEST_CASE("filter")
{
    auto r = run_golden("ellipsoidal");
    REQUIRE(r.size() == 1);
    CHECK(r[0].name == "ellipsoidal");
    CHECK(r[0].passed);
}
