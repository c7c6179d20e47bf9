#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "near.hpp"

#include <cmath>
#include <numbers>

#include "slater/errors.hpp"
#include "slater/quadrature.hpp"

using namespace slater;

TEST_CASE("finite interval")
{
    auto r = integrate_finite([](double t) { return cplx(t * t); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    auto s = integrate_finite([](double t) { return std::exp(cplx(0, 5 * t)); }, 0.0, 2.0);
    CHECK_REL(s.value, (std::exp(cplx(0, 10)) - 1.0) / cplx(0, 5), 1e-12);
}

TEST_CASE("endpoint singularity and honest error")
{
    auto r = integrate_finite([](double t) { return cplx(1.0 / std::sqrt(t)); }, 0.0, 1.0, 1e-10);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 2.0) <= std::max(r.error_estimate, 1e-12) * 10);
    CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite")
{
    auto r = integrate_semi_infinite([](double t) { return cplx(std::exp(-t * t)); }, 0.0);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));
    auto s = integrate([](double t) { return cplx(std::exp(-2 * t)); }, 1.0, INFINITY);
    CHECK(s.value.real() == doctest::Approx(std::exp(-2.0) / 2).epsilon(1e-12));
}

TEST_CASE("two dimensional")
{
    auto r = integrate_2d([](double x, double y) { return cplx(x * y * y); }, {0.0, 2.0, -1.0, 1.0});
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    auto s = integrate_2d([](double x, double y) { return cplx(std::exp(-x - y)); }, {0.0, INFINITY, 0.0, INFINITY});
    CHECK(s.value.real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("budget exhaustion reports non-convergence")
{
    auto r = integrate_finite([](double t) { return cplx(std::sin(1.0 / (t + 1e-4))); }, 0.0, 1.0, 1e-14, 200);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 200 + 21);
}

TEST_CASE("non-finite integrand throws")
{
    CHECK_THROWS_AS(integrate_finite([](double t) { return cplx(1.0 / (t - 0.5)); }, 0.0, 1.0), QuadratureError);
    CHECK_THROWS_AS(integrate_finite([](double) { return cplx(NAN); }, 0.0, 1.0), QuadratureError);
}
