#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "near.hpp"

#include <vector>

#include "slater/amplitudes.hpp"
#include "slater/ellipsoidal.hpp"
#include "slater/golden.hpp"
#include "slater/parallel.hpp"
#include "slater/series.hpp"
#include "slater/theorems.hpp"

using namespace slater;

// the OpenMP paths must reproduce the serial reference bit for bit

TEST_CASE("parallel_map")
{
    auto f = [](std::size_t i) { return std::sqrt(double(i)) * 1.1; };
    CHECK(parallel_map(1000, f, Execution::serial) == parallel_map(1000, f, Execution::parallel));
}

TEST_CASE("series engine")
{
    YukawaFormParams p{0.17, {1.0, 0.0}, 0.5, 0.23};
    auto a = theorem6_eval(2, p, {}, Execution::serial);
    auto b = theorem6_eval(2, p, {}, Execution::parallel);
    CHECK(a.terms == b.terms);
    CHECK(a.value == b.value);
    CHECK(a.terms_used == b.terms_used);
    CHECK(a.converged == b.converged);
    auto c = theorem1_eval(p, {}, Execution::serial);
    auto d = theorem1_eval(p, {}, Execution::parallel);
    CHECK(c.partial_sums == d.partial_sums);
}

TEST_CASE("amplitude terms")
{
    SlaterPair p{0.82, 0.66, 0.36, 0.19, 0.19 * 0.36};
    CHECK(s1_series_terms(10, p, 1e-11, Execution::serial) == s1_series_terms(10, p, 1e-11, Execution::parallel));
}

TEST_CASE("ellipsoidal sweeps")
{
    std::vector<double> R{0.05, 0.11, 0.5, 1.1, 2.0};
    CHECK(t_abc_exact_sweep(R, Execution::serial) == t_abc_exact_sweep(R, Execution::parallel));
    auto a = t_abc_oracle_sweep(R, 1e-9, Execution::serial);
    auto b = t_abc_oracle_sweep(R, 1e-9, Execution::parallel);
    for (std::size_t i = 0; i < R.size(); ++i) CHECK(a[i].value == b[i].value);
    CHECK(t_abc_series(0.11, 30, {}, Execution::serial).terms == t_abc_series(0.11, 30, {}, Execution::parallel).terms);
}

TEST_CASE("golden suite")
{
    auto a = run_golden({}, Execution::serial);
    auto b = run_golden({}, Execution::parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].passed == b[i].passed);
        REQUIRE(a[i].measurements.size() == b[i].measurements.size());
        for (std::size_t j = 0; j < a[i].measurements.size(); ++j)
            CHECK(a[i].measurements[j].actual == b[i].measurements[j].actual);
    }
}
