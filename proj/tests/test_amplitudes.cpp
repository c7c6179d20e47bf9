#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "near.hpp"

#include <cmath>
#include <numbers>

#include "slater/amplitudes.hpp"
#include "slater/errors.hpp"

using namespace slater;

// tau-integral values from mpmath at 25 digits

TEST_CASE("closed forms")
{
    SlaterPair p{0.11, 0.13, 0.17, 0.0, 0.0};
    CHECK(s1_two_slater_closed(p) == doctest::Approx(51.302582101676535).epsilon(1e-13));
    CHECK(s1_two_slater_closed({0.9, 0.4, 1.3, 0, 0}) == doctest::Approx(4.2257745955718734).epsilon(1e-13));
    // eta2 -> 0 is the Coulomb limit, eta1 -> eta2 the equal-exponent limit
    CHECK(s1_two_slater_closed({0.7, 0.0, 1.1, 0, 0}) == doctest::Approx(s1_coulomb_closed(0.7, 1.1)).epsilon(1e-14));
    CHECK(s1_two_slater_closed({0.5 + 1e-7, 0.5, 0.8, 0, 0}) ==
          doctest::Approx(s1_equal_eta_closed(0.5, 0.8)).epsilon(1e-6));
    CHECK_THROWS_AS(s1_two_slater_closed({0.5, 0.5, 1, 0, 0}), DomainError);
}

TEST_CASE("oracles")
{
    auto a = s1_tau_oracle({0.82, 0.66, 0.36, 0.19, 0.19 * 0.36});
    CHECK(a.converged);
    CHECK_REL(a.value, cplx(6.4564567249820254, -0.21083968738937924), 1e-10);
    auto b = s1_tau_oracle({0.82, 0.66, 0.036, 0.019, 0.019 * 0.036});
    CHECK_REL(b.value, cplx(8.2671271920071229, -0.0027227610812528538), 1e-10);
    auto c = s1_spatial_oracle({0.9, 0.4, 1.3, 0, 0});
    CHECK(c.converged);
    CHECK(c.value.real() == doctest::Approx(4.2257745955718734).epsilon(1e-7));
}

TEST_CASE("n-series terms: quadrature, gamma form and erf closed form agree")
{
    for (SlaterPair p : {SlaterPair{0.82, 0.66, 0.36, 0.19, 0.19 * 0.36},
                         SlaterPair{0.82, 0.66, 0.036, 0.019, 0.019 * 0.036},
                         SlaterPair{1.3, 0.5, 1.1, 0.8, -0.4}}) {
        CHECK_REL(s1_n0_erf_closed(p), s1_series_n_term(0, p), 1e-9);
        for (int n = 0; n < 4; ++n) {
            CAPTURE(n);
            cplx q = s1_series_n_term(n, p);
            cplx g = s1_general_term_gamma(n, p);
            CHECK(std::abs(g - q) <= 1e-8 * std::abs(q) + 1e-14);
        }
    }
}

TEST_CASE("n-series sums to the oracle")
{
    SlaterPair p{0.82, 0.66, 0.36, 0.19, 0.19 * 0.36};
    auto t = s1_series_terms(8, p);
    cplx s = 0;
    for (auto x : t) s += x;
    CHECK_REL(s, cplx(6.4564567249820254, -0.21083968738937924), 1e-8);
}

TEST_CASE("equal-exponent series")
{
    auto e = cheshire_series(1.0, 0.8, 0.6, 0.3, {});
    CHECK(e.converged);
    CHECK_REL(e.value, cplx(2.6391796675935316, -0.3988729945567671), 1e-9);
    auto z = cheshire_series(1.0, 0.8, 0.0, 0.0, {});
    CHECK(z.terms_used == 1);
    CHECK(z.value.real() == doctest::Approx(s1_equal_eta_closed(1.0, 0.8)).epsilon(1e-13));
    CHECK_THROWS_AS(cheshire_series(1.0, 0.8, 1.5, 0.3, {}), DomainError);
}

TEST_CASE("angular closed form against the line integral")
{
    CHECK_REL(theorem2_angular(1.0, 0.5, 0.7), cplx(0.95678154217816106, -2.9997880390509405), 1e-13);
    for (double e : {0.3, 1.0, 2.0})
        for (double x1 : {0.2, 0.9})
            CHECK_REL(theorem2_oracle(e, x1, 0.6).value, theorem2_angular(e, x1, 0.6), 1e-10);
}

TEST_CASE("double series at k = 0 approach the two-exponent closed form")
{
    SlaterPair p{0.11, 0.13, 0.17, 0.0, 0.0};
    auto e = theorem3_series(p, {8, 9, true});
    CHECK(std::abs(e.value.imag()) <= 1e-12);
    auto blocks = block_sums(e);
    REQUIRE(blocks.size() == 5);
    for (std::size_t i = 1; i < blocks.size(); ++i) CHECK(std::abs(blocks[i].second) < std::abs(blocks[i - 1].second));
    double closed = s1_two_slater_closed(p);
    CHECK(e.value.real() < closed);
    CHECK(e.value.real() > 0.99 * closed);
}

TEST_CASE("equal-exponent double series")
{
    auto e = theorem4_series(0.13, 0.17, {6, 1, true});
    auto blocks = block_sums(e);
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[0].second.real() == doctest::Approx(46.3078583).epsilon(1e-8));
    CHECK(e.value.real() < s1_equal_eta_closed(0.13, 0.17));
}

TEST_CASE("n = 0 closed value of the last corollary")
{
    // 2 pi Int_0^1 dt / sqrt(eta2^2 + (eta1^2 - eta2^2) t) = 4 pi / (eta1 + eta2)
    CHECK(corollary6_n0_closed(1.0, 2.0) == doctest::Approx(9.55478958466186).epsilon(1e-13));
}

TEST_CASE("unrepaired general term disagrees with quadrature")
{
    SlaterPair p{1.3, 0.5, 1.1, 0.8, -0.4};
    cplx q = s1_series_n_term(0, p);
    CHECK(std::abs(s1_general_term_gamma_raw(0, p) - q) > 0.5 * std::abs(q));
}
