#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "near.hpp"

#include <cmath>
#include <cstdlib>

#include "slater/errors.hpp"
#include "slater/series.hpp"

using namespace slater;

TEST_CASE("geometric series converges to the closed form")
{
    auto e = sum_series([](int n) { return cplx(std::pow(0.5, n)); }, {});
    CHECK(e.converged);
    CHECK(e.value.real() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(e.terms_used == static_cast<int>(e.terms.size()));
    CHECK(e.partial_sums.back() == e.value);
}

TEST_CASE("divergent series is reported as truncated")
{
    TruncationPolicy p;
    p.max_terms = 25;
    auto e = sum_series([](int n) { return cplx(std::pow(1.1, n)); }, p);
    CHECK_FALSE(e.converged);
    CHECK(e.terms_used == 25);
}

TEST_CASE("tail window needs consecutive small terms")
{
    TruncationPolicy p;
    p.tail_window = 3;
    // an isolated zero does not stop the sum
    auto e = sum_series([](int n) { return n == 2 ? cplx(0) : cplx(std::pow(0.1, n)); }, p);
    CHECK(e.converged);
    CHECK(e.terms_used > 3);
    CHECK(e.value.real() == doctest::Approx(1.0 / 0.9 - 0.01).epsilon(1e-9));
}

TEST_CASE("compensated sum")
{
    KahanSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    CHECK(s.value().real() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
}

TEST_CASE("policy validation")
{
    TruncationPolicy p;
    p.rel_tol = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.max_terms = 1;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("environment override of max_terms")
{
    setenv("SLATER_ADDITION_MAX_TERMS", "7", 1);
    CHECK(policy_from_env().max_terms == 7);
    setenv("SLATER_ADDITION_MAX_TERMS", "x", 1);
    CHECK_THROWS_AS(policy_from_env(), DomainError);
    unsetenv("SLATER_ADDITION_MAX_TERMS");
    CHECK(policy_from_env().max_terms == TruncationPolicy{}.max_terms);
}

TEST_CASE("cancellation metric")
{
    SeriesEvaluation e;
    e.terms = {cplx(10), cplx(-9)};
    e.value = 1.0;
    CHECK(cancellation_metric(e) == 10.0);
}

TEST_CASE("exceptions from terms propagate")
{
    auto f = [](int n) -> cplx {
        if (n == 3) throw RangeError("boom");
        return 1.0;
    };
    CHECK_THROWS_AS(sum_series(f, {}), RangeError);
    CHECK_THROWS_AS(sum_series(f, {}, Execution::parallel), RangeError);
}
