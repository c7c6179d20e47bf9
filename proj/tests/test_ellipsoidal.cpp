#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "near.hpp"

#include <cmath>

#include "slater/ellipsoidal.hpp"
#include "slater/errors.hpp"

using namespace slater;

// two-dimensional mpmath quadrature of the same integrand
TEST_CASE("exact form against reference integrals")
{
    CHECK(t_abc_exact(0.11) == doctest::Approx(0.36007125979682859).epsilon(1e-10));
    CHECK(t_abc_exact(1.1) == doctest::Approx(0.067393642328791472).epsilon(1e-10));
    CHECK(t_abc_exact(0.5) == doctest::Approx(0.21906872939546542).epsilon(1e-10));
}

TEST_CASE("oracle")
{
    auto r = t_abc_oracle(0.5);
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(0.21906872939546542).epsilon(1e-8));
}

TEST_CASE("series terms are real and approach the exact value")
{
    double exact = t_abc_exact(0.11);
    auto e = t_abc_series(0.11, 12, {});
    for (auto t : e.terms) CHECK(t.imag() == 0.0);
    double prev = INFINITY;
    for (auto s : e.partial_sums) {
        double err = std::abs(s.real() - exact);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("stall detector")
{
    for (double R : {0.011, 0.11, 1.1}) {
        auto e = t_abc_series(R, 40, {});
        auto st = stall_detector(e);
        CAPTURE(R);
        CHECK(st.stalled);
        CHECK(st.index >= 0);
        CHECK(st.magnitude > 0.0);
    }
    SeriesEvaluation geo;
    for (int i = 0; i < 30; ++i) geo.terms.push_back(std::pow(0.5, i));
    CHECK_FALSE(stall_detector(geo).stalled);
}

TEST_CASE("domain")
{
    CHECK_THROWS_AS(t_abc_exact(0.0), DomainError);
    CHECK_THROWS_AS((EllipsoidalParams{1.0, 0.5, 0.0}.validate()), DomainError);
}
