#include "slater/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slater/errors.hpp"
#include "slater/specfun.hpp"

namespace slater {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
const cplx I{0.0, 1.0};

double sign_pow(int n) { return n % 2 ? -1.0 : 1.0; }

// i^m, exact
cplx ipow(int m)
{
    switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

void require_distinct(const SlaterPair& p, const char* who)
{
    if (p.eta1 == p.eta2)
        throw DomainError(std::string(who) + ": eta1 = eta2 gives a degenerate interval");
}

// int_a^b s^p e^{-x s} ds for integer p, real a, b > 0
double exp_moment(int p, double x, double a, double b)
{
    if (p >= 0) {
        double s = lower_incomplete_gamma(p + 1.0, x * b) - lower_incomplete_gamma(p + 1.0, x * a);
        return s * std::pow(x, -p - 1.0);
    }
    double s = upper_incomplete_gamma(p + 1.0, x * a).real() -
               upper_incomplete_gamma(p + 1.0, x * b).real();
    return s * std::pow(x, -p - 1.0);
}

// int_{lo}^{hi} s^P e^{-alpha s^2 - x2 s} ds, alpha purely imaginary.
// Completed square with complex incomplete gammas when |alpha| s^2 is large,
// otherwise a Taylor series in alpha over real incomplete gammas.
cplx gauss_moment(int P, cplx alpha, double x2, double lo, double hi)
{
    double smax = std::max(std::abs(lo), std::abs(hi));
    if (P >= 0 && std::abs(alpha) * smax * smax > 2.0) {
        cplx c = x2 / (2.0 * alpha);
        auto F = [&](cplx w, int q) {
            cplx u = alpha * w * w;
            double A = 0.5 * (q + 1);
            return -0.5 * std::pow(w, double(q + 1)) * std::pow(u, -A) * upper_incomplete_gamma(A, u);
        };
        cplx tot = 0.0;
        for (int K = 0; K <= P; ++K) {
            int q = P - K;
            tot += binomial(P, K) * std::pow(-c, double(K)) * (F(hi + c, q) - F(lo + c, q));
        }
        return std::exp(x2 * x2 / (4.0 * alpha)) * tot;
    }
    cplx tot = 0.0;
    cplx coef = 1.0;
    for (int r = 0; r < 400; ++r) {
        if (r > 0) coef *= -alpha / double(r);
        cplx t = coef * exp_moment(P + 2 * r, x2, lo, hi);
        tot += t;
        if (r > 3 && std::abs(t) < 1e-18 * std::abs(tot)) return tot;
    }
    throw TruncationError("gauss_moment: Taylor series in the Gaussian coefficient did not converge");
}

}  // namespace

void SlaterPair::validate() const
{
    if (!(eta1 > 0.0) || !(eta2 > 0.0)) throw DomainError("eta1 and eta2 must be positive");
    if (!(x2 > 0.0)) throw DomainError("x2 must be positive");
    if (!(k >= 0.0)) throw DomainError("k must be nonnegative");
    if (std::abs(k_dot_x2) > k * x2 * (1.0 + 1e-12))
        throw DomainError("|k_dot_x2| must not exceed k*x2");
}

double s1_coulomb_closed(double eta1, double x2)
{
    if (!(eta1 > 0.0) || !(x2 > 0.0)) throw DomainError("eta1 and x2 must be positive");
    return -4.0 * kPi * std::expm1(-eta1 * x2) / (x2 * eta1 * eta1);
}

double s1_two_slater_closed(const SlaterPair& p)
{
    if (!(p.eta1 > 0.0) || !(p.eta2 >= 0.0) || !(p.x2 > 0.0))
        throw DomainError("eta1, x2 must be positive and eta2 nonnegative");
    if (p.eta1 == p.eta2) throw DomainError("eta1 = eta2: use s1_equal_eta_closed");
    double d = p.eta1 - p.eta2;
    return -4.0 * kPi * std::exp(-p.eta2 * p.x2) * std::expm1(-d * p.x2) /
           (p.x2 * d * (p.eta1 + p.eta2));
}

double s1_equal_eta_closed(double eta2, double x2)
{
    if (!(eta2 > 0.0) || !(x2 >= 0.0)) throw DomainError("eta2 must be positive, x2 nonnegative");
    return 2.0 * kPi * std::exp(-x2 * eta2) / eta2;
}

QuadratureResult s1_tau_oracle(const SlaterPair& p, double tol)
{
    p.validate();
    auto f = [&](double t) -> cplx {
        double L = std::sqrt((1.0 - t) * (p.k * p.k * t + p.eta2 * p.eta2) + p.eta1 * p.eta1 * t);
        return std::exp(cplx(-p.x2 * L, -p.k_dot_x2 * t)) / L;
    };
    return 2.0 * kPi * integrate_finite(f, 0.0, 1.0, tol);
}

QuadratureResult s1_spatial_oracle(const SlaterPair& p, double tol)
{
    p.validate();
    auto f = [&](double x1, double u) -> cplx {
        double r = std::sqrt(std::max(0.0, x1 * x1 + p.x2 * p.x2 - 2.0 * x1 * p.x2 * u));
        if (r == 0.0) return 0.0;
        return x1 * std::exp(-p.eta2 * r - p.eta1 * x1) / r;
    };
    auto a = integrate_2d(f, {0.0, p.x2, -1.0, 1.0}, tol);
    auto b = integrate_2d(f, {p.x2, INFINITY, -1.0, 1.0}, tol);
    return 2.0 * kPi * (a + b);
}

cplx s1_series_n_term(int n, const SlaterPair& p, double tol)
{
    p.validate();
    require_distinct(p, "s1_series_n_term");
    if (n < 0) throw DomainError("n must be nonnegative");
    double D = p.eta1 * p.eta1 - p.eta2 * p.eta2;
    auto f = [&](double t) -> cplx {
        double s = std::sqrt(D * t + p.eta2 * p.eta2);
        double w = std::pow(t * (1.0 - t), n) * std::pow(s, -n - 0.5);
        return std::exp(cplx(0.0, -p.k_dot_x2 * t)) * w * bessel_k_half(n, cplx(p.x2 * s, 0.0));
    };
    auto r = integrate_finite(f, 0.0, 1.0, tol);
    if (!r.converged)
        throw QuadratureError("s1_series_n_term: quadrature did not converge for n = " + std::to_string(n));
    double pre = 2.0 * kPi * std::sqrt(2.0 / kPi) * sign_pow(n) * std::pow(p.k, 2 * n) /
                 factorial(n) * std::pow(2.0, -n) * std::pow(p.x2, n + 0.5);
    return pre * r.value;
}

std::vector<cplx> s1_series_terms(int n_max, const SlaterPair& p, double tol, Execution ex)
{
    return parallel_map(
        static_cast<std::size_t>(n_max + 1),
        [&](std::size_t n) { return s1_series_n_term(static_cast<int>(n), p, tol); }, ex);
}

cplx s1_n0_erf_closed(const SlaterPair& p)
{
    p.validate();
    require_distinct(p, "s1_n0_erf_closed");
    if (p.k_dot_x2 == 0.0) throw DomainError("s1_n0_erf_closed: requires k_dot_x2 != 0");
    double D = p.eta1 * p.eta1 - p.eta2 * p.eta2;
    cplx alpha = I * p.k_dot_x2 / D;
    cplx sa = std::sqrt(alpha);
    cplx c = p.x2 / (2.0 * alpha);
    cplx ph = std::exp(I * p.k_dot_x2 * p.eta2 * p.eta2 / D + p.x2 * p.x2 / (4.0 * alpha));
    if (!std::isfinite(std::abs(ph))) throw RangeError("s1_n0_erf_closed: exponential prefactor overflows");
    cplx diff = erf_complex(sa * (p.eta1 + c)) - erf_complex(sa * (p.eta2 + c));
    return 4.0 * kPi / D * ph * kSqrtPi / (2.0 * sa) * diff;
}

cplx s1_general_term_gamma(int n, const SlaterPair& p)
{
    p.validate();
    require_distinct(p, "s1_general_term_gamma");
    if (p.k_dot_x2 == 0.0) throw DomainError("s1_general_term_gamma: requires k_dot_x2 != 0");
    if (n < 0) throw DomainError("n must be nonnegative");
    double D = p.eta1 * p.eta1 - p.eta2 * p.eta2;
    cplx alpha = I * p.k_dot_x2 / D;
    cplx pre = 2.0 * kPi * sign_pow(n) * std::pow(p.k, 2 * n) / factorial(n) * std::pow(2.0, -n) *
               std::pow(p.x2, n) * 2.0 / std::pow(D, 2 * n + 1) *
               std::exp(I * p.k_dot_x2 * p.eta2 * p.eta2 / D);
    cplx tot = 0.0;
    for (int J = 0; J <= n; ++J) {
        double cJ = factorial(n + J) / (factorial(J) * factorial(n - J)) * std::pow(2.0 * p.x2, -J);
        for (int j = 0; j <= n; ++j) {
            for (int m = 0; m <= n; ++m) {
                int P = 3 * n - 2 * j - 2 * m - J;
                double c = cJ * binomial(n, j) * std::pow(-p.eta2 * p.eta2, j) * sign_pow(n) *
                           binomial(n, m) * sign_pow(m) * std::pow(p.eta1, 2 * m);
                tot += c * gauss_moment(P, alpha, p.x2, p.eta2, p.eta1);
            }
        }
    }
    return pre * tot;
}

cplx s1_general_term_gamma_raw(int n, const SlaterPair& p)
{
    p.validate();
    require_distinct(p, "s1_general_term_gamma_raw");
    if (n < 0) throw DomainError("n must be nonnegative");
    const double e1 = p.eta1, e2 = p.eta2, x2 = p.x2, k = p.k;
    const double D = e1 * e1 - e2 * e2;
    cplx pre = std::pow(2.0, 1 - n) * std::pow(k, 2 * n) * std::pow(x2, n) *
               std::pow(e1 - e2, -2 * n) * std::pow(e1 + e2, -2 * n) *
               std::exp(-I * e2 * e2 * k * x2 / (e2 * e2 - e1 * e1)) / ((e2 * e2 - e1 * e1) * factorial(n));
    cplx tot = 0.0;
    for (int m = 0; m <= n; ++m)
        for (int j = 0; j <= n; ++j)
            for (int J = 0; J <= n; ++J) {
                int P = 3 * n - 2 * j - J - 2 * m;
                cplx outer = sign_pow(m) * std::pow(e1, 2 * m) * binomial(n, m) * sign_pow(j) *
                             std::pow(e2, 2 * j) * binomial(n, j) * std::pow(2.0, -J) * std::pow(x2, -J) *
                             factorial(J + n) * std::exp(-I * x2 * D / (4.0 * k)) /
                             (factorial(J) * factorial(n - J));
                for (int K = 0; K <= P; ++K) {
                    int Q = 2 * j + J + K + 2 * m - 3 * n;
                    cplx c = std::pow(-0.5, K) * std::pow(I * (e2 * e2 - e1 * e1) / k, double(K)) * binomial(P, K);
                    cplx g1 = e1 * e1 + e2 * (-e2 + 2.0 * I * k);
                    cplx g2 = e2 * (2.0 * k + I * e2) - I * e1 * e1;
                    cplx A = std::pow(1.0 / D, (Q - 1) / 2.0) * std::pow(g1, double(Q)) /
                             (2.0 * k * x2 * std::pow(g2, double(Q))) *
                             std::pow(-I * x2, (Q + 1) / 2.0) *
                             upper_incomplete_gamma((1 - Q) / 2.0, -I * x2 * std::pow(e1 * e1 + (2.0 * I * k - e2) * e2, 2.0) / (4.0 * k * D));
                    cplx g3 = (2.0 * k * e1 + I * (e2 * e2 - e1 * e1)) / k;
                    cplx B = 0.5 * std::pow(g3, double(1 - Q)) *
                             upper_incomplete_gamma((-Q - 1) / 2.0 + 1.0,
                                                    I * x2 * std::pow(2.0 * k * e1 + I * (e2 * e2 - e1 * e1), 2.0) / (4.0 * k * D));
                    tot += outer * c * (A - B);
                }
            }
    return pre * tot;
}

SeriesEvaluation cheshire_series(double eta1, double x2, double k, double k_dot_x2,
                                 const TruncationPolicy& policy)
{
    SlaterPair p{eta1, eta1, x2, k, k_dot_x2};
    p.validate();
    if (k > 1.0 && !policy.allow_k_gt_1) throw DomainError("k > 1 requires the override");
    auto term = [&](int n) -> cplx {
        double r = 2.0 * kPi * sign_pow(n) * std::pow(2.0, -3.0 * n - 0.5) * std::pow(k, 2 * n) *
                   std::pow(x2, n + 0.5) * std::pow(eta1, -n - 0.5) / std::tgamma(n + 1.5);
        return r * bessel_k_half(n, cplx(x2 * eta1, 0.0)) * kummer_1f1(n + 1, 2 * n + 2, cplx(0.0, -k_dot_x2));
    };
    if (k == 0.0) {
        SeriesAccumulator acc(policy);
        acc.push(term(0), 0);
        auto e = acc.finish();
        e.converged = true;
        return e;
    }
    return sum_series(term, policy);
}

cplx theorem2_angular(double eta2, double x1, double x2)
{
    if (!(eta2 > 0.0) || !(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("eta2, x1, x2 must be positive");
    double a = std::sqrt(2.0) * std::sqrt(x1 * x2) * eta2;
    return std::sqrt(2.0) * (-std::exp(-a) + std::exp(cplx(0.0, -a))) / (x1 * x2 * eta2);
}

QuadratureResult theorem2_oracle(double eta2, double x1, double x2, double tol)
{
    if (!(eta2 > 0.0) || !(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("eta2, x1, x2 must be positive");
    double q = x1 * x2;
    auto f = [&](double u) -> cplx {
        cplx r = std::sqrt(cplx(-u * q, 0.0));
        return std::exp(-std::sqrt(2.0) * eta2 * r) / r;
    };
    // u = -v^2 and u = v^2 absorb the inverse square root at u = 0
    auto neg = integrate_finite([&](double v) { return 2.0 * v * f(-v * v); }, 0.0, 1.0, tol);
    auto pos = integrate_finite([&](double v) { return 2.0 * v * f(v * v); }, 0.0, 1.0, tol);
    return neg + pos;
}

namespace {

int theorem3_jmax(int n) { return static_cast<int>(std::floor((std::abs(n - 1) - 1) / 2.0)); }

void check_bounds(const SeriesIndexBounds& b)
{
    if (b.n_max < 0 || b.k_max < 1) throw DomainError("series bounds: n_max >= 0 and k_max >= 1 required");
    if (!b.even_only) throw DomainError("series bounds: this sum runs over even n only");
}

}  // namespace

SeriesEvaluation theorem3_series(const SlaterPair& p, const SeriesIndexBounds& bounds,
                                 const TruncationPolicy& policy)
{
    p.validate();
    require_distinct(p, "theorem3_series");
    check_bounds(bounds);
    policy.validate();
    const double e1 = p.eta1, e2 = p.eta2, x2 = p.x2;
    const double D = e1 * e1 - e2 * e2;
    SeriesAccumulator acc(policy);
    double ratio = std::abs(D) / (e2 * e2);
    if (ratio >= 1.0)
        acc.warn("expansion validity: |eta1^2 - eta2^2|/eta2^2 = " + std::to_string(ratio) + " >= 1");
    bool all_blocks = true;
    std::vector<cplx> block_totals;
    for (int n = 0; n <= bounds.n_max; n += 2) {
        int jmax = theorem3_jmax(n);
        int h = n / 2;
        double pos = 0.0;  // Pochhammer ((n+3)/2)_k
        double a = (n + 3) / 2.0;
        cplx block = 0.0;
        int small = 0;
        bool block_done = false;
        for (int k = 0; k < bounds.k_max; ++k) {
            pos = k == 0 ? 1.0 : pos * (a + k - 1);
            cplx term = 0.0;
            for (int j = 0; j <= jmax; ++j) {
                double cj = factorial((std::abs(n - 1) + 2 * j - 1) / 2) /
                            (factorial(j) * factorial((std::abs(n - 1) - 2 * j - 1) / 2));
                for (int i = 0; i <= h; ++i) {
                    cplx ph = ipow(3 * n) * sign_pow(k - i);
                    double c = kSqrtPi * e1 * std::pow(2.0, -j + h + 3) * std::tgamma(a) * binomial(h, i) *
                               std::pow(e2, n - 2 * i) * pos / (factorial(k) * std::tgamma(n + 2.0)) * cj *
                               std::pow(x2, -2 * i + n + 2 * k + 2) * std::pow(D, k);
                    term += ph * c * upper_incomplete_gamma(2 * i - j - 2 * k - h - 2, cplx(x2 * e2, 0.0));
                }
            }
            acc.push(term, n, k);
            block += term;
            double bound = policy.rel_tol * std::abs(acc.value()) + policy.abs_tol;
            small = std::abs(term) < bound ? small + 1 : 0;
            if (small >= policy.tail_window) {
                block_done = true;
                break;
            }
        }
        if (!block_done) all_blocks = false;
        block_totals.push_back(block);
    }
    auto e = acc.finish();
    double resid = std::abs(e.value.imag());
    if (resid > 1e-12) throw RangeError("theorem3_series: imaginary residue " + std::to_string(resid));
    bool tail = block_totals.size() >= static_cast<std::size_t>(policy.tail_window);
    for (std::size_t i = block_totals.size() - std::min(block_totals.size(), std::size_t(policy.tail_window));
         tail && i < block_totals.size(); ++i)
        tail = std::abs(block_totals[i]) < policy.rel_tol * std::abs(e.value) + policy.abs_tol;
    e.converged = all_blocks && tail;
    return e;
}

SeriesEvaluation theorem4_series(double eta2, double x2, const SeriesIndexBounds& bounds,
                                 const TruncationPolicy& policy)
{
    if (!(eta2 > 0.0) || !(x2 > 0.0)) throw DomainError("eta2 and x2 must be positive");
    check_bounds(bounds);
    SeriesAccumulator acc(policy);
    for (int n = 0; n <= bounds.n_max; n += 2) {
        int jmax = theorem3_jmax(n);
        int h = n / 2;
        double term = 0.0;
        for (int j = 0; j <= jmax; ++j) {
            double cj = factorial((std::abs(n - 1) + 2 * j - 1) / 2) /
                        (factorial(j) * factorial((std::abs(n - 1) - 2 * j - 1) / 2));
            for (int i = 0; i <= h; ++i) {
                double c = kSqrtPi * sign_pow(i) * sign_pow(h) * std::pow(2.0, -j + h + 3) *
                           std::tgamma((n + 3) / 2.0) * binomial(h, i) * cj / std::tgamma(n + 2.0) *
                           std::pow(x2, -2 * i + n + 2) * std::pow(eta2, -2 * i + n + 1);
                term += c * upper_incomplete_gamma(2 * i - j - h - 2, cplx(x2 * eta2, 0.0)).real();
            }
        }
        if (acc.push(term, n)) break;
    }
    return acc.finish();
}

std::vector<std::pair<int, cplx>> block_sums(const SeriesEvaluation& e)
{
    std::vector<std::pair<int, cplx>> out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        int n = i < e.outer.size() ? e.outer[i] : static_cast<int>(i);
        if (out.empty() || out.back().first != n) out.emplace_back(n, 0.0);
        out.back().second += e.terms[i];
    }
    return out;
}

double corollary6_n0_closed(double eta1, double eta2)
{
    if (!(eta1 > 0.0) || !(eta2 > eta1)) throw DomainError("corollary6_n0_closed: requires eta2 > eta1 > 0");
    double r = std::sqrt(eta2 * eta2 - eta1 * eta1);
    return 4.0 * kPi / r * std::asinh(r / eta1);
}

}  // namespace slater
