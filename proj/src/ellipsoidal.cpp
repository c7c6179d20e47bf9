#include "slater/ellipsoidal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slater/errors.hpp"
#include "slater/specfun.hpp"

namespace slater {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

void require_positive(double R)
{
    if (!(R > 0.0)) throw DomainError("R must be positive");
}

}  // namespace

void EllipsoidalParams::validate() const
{
    require_positive(R);
    if (!(lambda >= 1.0)) throw DomainError("lambda must be >= 1");
    if (!(std::abs(mu) <= 1.0)) throw DomainError("|mu| must be <= 1");
}

double t_abc_integrand(const EllipsoidalParams& p)
{
    const double R = p.R, l = p.lambda, m = p.mu;
    double q = std::sqrt(std::max(0.0, l * l + m * m - 1.0));
    return ((l - m) / R + (l * l - m * m)) * std::exp(-3.0 * R * l - R * m - R * q);
}

QuadratureResult t_abc_oracle(double R, double tol)
{
    require_positive(R);
    auto f = [R](double l, double m) -> cplx { return t_abc_integrand({R, l, m}); };
    // |mu| has a kink at lambda = 1, so the mu range is split at 0
    auto lo = integrate_2d(f, {1.0, INFINITY, -1.0, 0.0}, tol);
    auto hi = integrate_2d(f, {1.0, INFINITY, 0.0, 1.0}, tol);
    return 2.0 * R * R * R * (lo + hi);
}

double t_abc_exact(double R)
{
    require_positive(R);
    double a = std::exp(3 * R) * (-16 * R * R + 44 * R + 116.0 / (9 * R) - 116.0 / 3) *
               exp_integral_ei(-8 * R);
    double b = std::exp(-3 * R) * (16 * R * R + 44 * R + 116.0 / (9 * R) + 116.0 / 3) *
               (exp_integral_ei(-2 * R) + 2 * std::log(2.0));
    double c = std::exp(-3 * R) * (624 * R * R + 2256 * R + 131.0 / (3 * R) + 1670) / 16 -
               std::exp(-5 * R) * (160 * R + 131.0 / (3 * R) + 34) / 16;
    return (a - b + c) / 81;
}

double t_abc_series_term(int n, double R)
{
    require_positive(R);
    if (n < 0) throw DomainError("n must be nonnegative");
    int m = n == 0 ? 0 : n - 1;
    cplx phase = I * std::exp(I * (kPi * n)) * std::pow(cplx(-R, 0.0), -n - 1.5);
    double i3 = bessel_i_half(n + 1, R);  // I_{n+3/2}
    double i5 = bessel_i_half(n + 2, R);  // I_{n+5/2}
    cplx z{4.0 * R, 0.0};
    cplx sum = 0.0;
    for (int j = 0; j <= m; ++j) {
        double c = std::sqrt(kPi) * std::pow(2.0, j + 2 * n - 4.5) * std::pow(R, 2 * n) *
                   factorial(n) * factorial(m + j) / (factorial(j) * factorial(n) * factorial(m - j));
        cplx g1 = upper_incomplete_gamma(-j - n + 1, z);
        cplx g2 = upper_incomplete_gamma(-j - n + 2, z);
        cplx g3 = upper_incomplete_gamma(-j - n + 3, z);
        sum += c * (R * i5 * (16 * R * R * g1 - 4.0 * g2 - g3) - (2 * n + 3) * i3 * (4.0 * g2 + g3));
    }
    cplx t = phase * sum;
    if (std::abs(t.imag()) > 1e-10 * std::abs(t.real()))
        throw RangeError("t_abc_series_term: phase did not collapse to a real value at n = " +
                         std::to_string(n));
    return t.real();
}

SeriesEvaluation t_abc_series(double R, int n_terms, const TruncationPolicy& policy, Execution ex)
{
    require_positive(R);
    if (n_terms < 1) throw DomainError("n_terms must be positive");
    TruncationPolicy p = policy;
    p.max_terms = n_terms;
    p.tail_window = std::min(p.tail_window, n_terms);
    return sum_series([R](int n) { return cplx(t_abc_series_term(n, R), 0.0); }, p, ex);
}

StallReport stall_detector(const SeriesEvaluation& e, int window)
{
    if (window < 1) throw DomainError("stall window must be >= 1");
    StallReport r;
    const auto& t = e.terms;
    for (std::size_t i = 0; i + window < t.size(); ++i) {
        double a = std::abs(t[i]), b = std::abs(t[i + window]);
        if (b > 0.0 && a < 2.0 * b) {
            r.stalled = true;
            r.index = static_cast<int>(i);
            r.magnitude = a;
            return r;
        }
    }
    return r;
}

std::vector<double> t_abc_exact_sweep(const std::vector<double>& R, Execution ex)
{
    return parallel_map(R.size(), [&](std::size_t i) { return t_abc_exact(R[i]); }, ex);
}

std::vector<QuadratureResult> t_abc_oracle_sweep(const std::vector<double>& R, double tol, Execution ex)
{
    return parallel_map(R.size(), [&](std::size_t i) { return t_abc_oracle(R[i], tol); }, ex);
}

}  // namespace slater
