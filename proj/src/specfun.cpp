#include "slater/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "slater/errors.hpp"
#include "slater/quadrature.hpp"

namespace slater {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kEuler = 0.57721566490153286061;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

const std::array<double, kFactorialLimit + 1>& factorial_table()
{
    static const auto table = [] {
        std::array<double, kFactorialLimit + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kFactorialLimit; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table;
}

constexpr int kDoubleFactorialLimit = 300;

const std::array<double, kDoubleFactorialLimit + 1>& double_factorial_table()
{
    static const auto table = [] {
        std::array<double, kDoubleFactorialLimit + 1> t{};
        t[0] = 1.0;
        t[1] = 1.0;
        for (int i = 2; i <= kDoubleFactorialLimit; ++i) t[i] = t[i - 2] * i;
        return t;
    }();
    return table;
}

bool is_half_integer_multiple(double a)
{
    double t = 2.0 * a;
    return std::abs(t - std::round(t)) < 1e-12;
}

bool is_integer(double a) { return std::abs(a - std::round(a)) < 1e-12; }

// Legendre continued fraction for Gamma(a, z), modified Lentz.
cplx gamma_cf(double a, cplx z)
{
    cplx b = z + 1.0 - a;
    cplx c = 1.0 / kTiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        cplx del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 4 * kEps)
            return std::exp(-z + a * std::log(z)) * h;
    }
    throw TruncationError("incomplete gamma continued fraction did not converge");
}

// E1 by power series, |z| moderate.
cplx e1_series(cplx z)
{
    cplx sum = 0.0;
    cplx t = 1.0;
    for (int k = 1; k < 1000; ++k) {
        t *= -z / double(k);
        cplx term = t / double(k);
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return -kEuler - std::log(z) - sum;
}

cplx erfc_cf(cplx z)
{
    // erfc z = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    cplx f = z;
    cplx c = z;
    cplx d = 0.0;
    for (int n = 1; n < 20000; ++n) {
        double an = 0.5 * n;
        d = z + an * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = z + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        cplx del = c * d;
        f *= del;
        if (std::abs(del - 1.0) < 2 * kEps) {
            cplx z2 = z * z;
            if (-z2.real() > 700.0) throw RangeError("erfc: e^{-z^2} overflows");
            return std::exp(-z2) / (kSqrtPi * f);
        }
    }
    throw TruncationError("erfc continued fraction did not converge");
}

cplx erf_series(cplx z)
{
    if (std::norm(z) > 600.0) throw RangeError("erf: power series overflows for |z|^2 > 600");
    cplx z2 = z * z;
    cplx t = z;
    cplx sum = z;
    for (int n = 1; n < 5000; ++n) {
        t *= -z2 / double(n);
        cplx term = t / double(2 * n + 1);
        sum += term;
        if (std::abs(term) < 0.5 * kEps * std::abs(sum)) break;
    }
    return 2.0 / kSqrtPi * sum;
}

bool use_erfc_cf(cplx z) { return z.real() >= 1.0 && std::abs(z) >= 3.0; }

// gamma(a, x) series for real a > 0
double lower_gamma_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (term < kEps * sum) break;
    }
    return std::exp(-x + a * std::log(x)) * sum;
}

double e1_real(double t)
{
    if (t <= 2.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 1000; ++k) {
            term *= -t / k;
            sum += term / k;
            if (std::abs(term / k) < kEps * std::abs(sum)) break;
        }
        return -kEuler - std::log(t) - sum;
    }
    double b = t + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -double(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 2 * kEps) return h * std::exp(-t);
    }
    throw TruncationError("E1 continued fraction did not converge");
}

}  // namespace

double factorial(int n)
{
    if (n < 0) throw DomainError("factorial of negative integer");
    if (n > kFactorialLimit)
        throw CapacityError("factorial(" + std::to_string(n) + ") exceeds the cache bound " +
                            std::to_string(kFactorialLimit));
    return factorial_table()[n];
}

double double_factorial(int n)
{
    if (n < -1) throw DomainError("double factorial of integer < -1");
    if (n <= 0) return 1.0;
    if (n > kDoubleFactorialLimit)
        throw CapacityError("double factorial(" + std::to_string(n) + ") exceeds the cache bound");
    return double_factorial_table()[n];
}

double binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

cplx bessel_k_half(int n, cplx z, bool scaled)
{
    if (n < 0) throw DomainError("bessel_k_half: negative order index, use bessel_k_half_signed");
    if (z == cplx(0.0, 0.0)) throw DomainError("bessel_k_half: z = 0");
    if (z.real() < 0.0) throw DomainError("bessel_k_half: Re z < 0 is off the principal branch");
    if (2 * n > kFactorialLimit)
        throw CapacityError("bessel_k_half: order " + std::to_string(n) + "+1/2 exceeds the factorial cache");
    cplx w = 1.0 / (2.0 * z);
    cplx sum = 0.0;
    for (int J = n; J >= 0; --J)
        sum = sum * w + factorial(n + J) / (factorial(J) * factorial(n - J));
    cplx pre = std::sqrt(kPi / (2.0 * z));
    if (!scaled) pre *= std::exp(-z);
    return pre * sum;
}

cplx bessel_k_half_signed(int m, cplx z)
{
    return bessel_k_half(m >= 0 ? m : -m - 1, z);
}

double log_bessel_k_half(int n, double x)
{
    if (x <= 0.0) throw DomainError("log_bessel_k_half: x <= 0");
    if (n < 0) n = -n - 1;
    double s = 0.5 * std::log(kPi / (2.0 * x)) - x;
    double r = 1.0;
    for (int m = 1; m <= n; ++m) {
        r = 1.0 / r + (2.0 * m - 1.0) / x;
        s += std::log(r);
    }
    return s;
}

namespace {

// (x/2)^nu / Gamma(nu + 1) * sum, nu = n + 1/2
double bessel_i_series(int n, double x, double& log_scale)
{
    double nu = n + 0.5;
    double q = 0.25 * x * x;
    double t = 1.0, sum = 1.0;
    for (int k = 0; k < 100000; ++k) {
        t *= q / ((k + 1) * (k + nu + 1));
        sum += t;
        if (t < 0.5 * kEps * sum) break;
    }
    log_scale = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0);
    return sum;
}

}  // namespace

double bessel_i_half(int n, double x)
{
    if (x <= 0.0) throw DomainError("bessel_i_half: x <= 0");
    if (n < 0) throw DomainError("bessel_i_half: negative order index");
    if (x > 40.0 && n < x / 2) {
        if (x > 700.0) throw RangeError("bessel_i_half: sinh overflows");
        double f = std::sqrt(2.0 / (kPi * x));
        double im = f * std::cosh(x);
        double i0 = f * std::sinh(x);
        for (int m = 0; m < n; ++m) {
            double nu = m + 0.5;
            double ip = im - (2.0 * nu / x) * i0;
            im = i0;
            i0 = ip;
        }
        return i0;
    }
    // prefactor by products keeps small-order values exact to rounding
    double pre = std::sqrt(0.5 * x) / (0.5 * kSqrtPi);
    for (int m = 1; m <= n; ++m) pre *= 0.5 * x / (m + 0.5);
    double ls = 0.0;
    double sum = bessel_i_series(n, x, ls);
    return pre * sum;
}

double log_bessel_i_half(int n, double x)
{
    if (x <= 0.0) throw DomainError("log_bessel_i_half: x <= 0");
    double ls = 0.0;
    double sum = bessel_i_series(n, x, ls);
    return ls + std::log(sum);
}

double legendre_p(int n, double u)
{
    if (std::abs(u) > 1.0) throw DomainError("legendre_p: |u| > 1");
    if (n < 0) throw DomainError("legendre_p: negative degree");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = u;
    for (int k = 1; k < n; ++k) {
        double p2 = ((2 * k + 1) * u * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double hermite_h(int j, double x)
{
    if (j < 0) throw DomainError("hermite_h: negative degree");
    if (j == 0) return 1.0;
    double h0 = 1.0, h1 = 2.0 * x;
    for (int k = 1; k < j; ++k) {
        double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

LegendreCoeffSet cos_power_to_legendre(int j)
{
    if (j < 0) throw DomainError("cos_power_to_legendre: j < 0");
    LegendreCoeffSet s;
    s.power = j;
    for (int m = j; m >= 0; m -= 2) {
        double c = (2 * m + 1) * factorial(j) * std::pow(2.0, 0.5 * (m - j)) /
                   (factorial((j - m) / 2) * double_factorial(j + m + 1));
        s.coeffs[m] = c;
    }
    return s;
}

cplx upper_incomplete_gamma(double a, cplx z, const GammaConfig& cfg)
{
    if (!is_half_integer_multiple(a))
        throw DomainError("upper_incomplete_gamma: a must be an integer or half-integer");
    a = 0.5 * std::round(2.0 * a);
    if (z == cplx(0.0, 0.0)) {
        if (a > 0) return std::tgamma(a);
        throw DomainError("upper_incomplete_gamma: divergent at z = 0 for a <= 0");
    }
    bool int_a = is_integer(a);
    if (int_a && a >= 1) {
        int n = static_cast<int>(std::round(a));
        if (n - 1 > kFactorialLimit) throw CapacityError("upper_incomplete_gamma: a too large");
        cplx sum = 0.0, t = 1.0;
        for (int k = 0; k < n; ++k) {
            sum += t;
            t *= z / double(k + 1);
        }
        return factorial(n - 1) * std::exp(-z) * sum;
    }
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw DomainError("upper_incomplete_gamma: z on the negative real axis");
    double r = std::abs(z);
    if ((r >= 2.5 && z.real() >= 0.0) || r >= 6.0) return gamma_cf(a, z);

    cplx ez = std::exp(-z);
    double b;
    cplx g;
    if (int_a) {
        b = 0.0;
        g = e1_series(z);
    } else {
        b = 0.5;
        g = kSqrtPi * erfc_complex(std::sqrt(z));
    }
    int depth = static_cast<int>(std::round(std::abs(a - b)));
    if (depth > cfg.max_recurrence)
        throw CapacityError("upper_incomplete_gamma: recurrence depth " + std::to_string(depth) +
                            " exceeds bound " + std::to_string(cfg.max_recurrence));
    while (b > a + 0.25) {
        g = (g - std::pow(z, b - 1.0) * ez) / (b - 1.0);
        b -= 1.0;
    }
    while (b < a - 0.25) {
        g = b * g + std::pow(z, b) * ez;
        b += 1.0;
    }
    return g;
}

double lower_incomplete_gamma(double a, double x)
{
    if (a <= 0.0) throw DomainError("lower_incomplete_gamma: a <= 0");
    if (x < 0.0) throw DomainError("lower_incomplete_gamma: x < 0");
    if (x == 0.0) return 0.0;
    if (x < a + 30.0) return lower_gamma_series(a, x);
    return std::tgamma(a) - upper_incomplete_gamma(std::round(2 * a) / 2, x).real();
}

cplx erf_complex(cplx z)
{
    if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) return -erf_complex(-z);
    if (z == cplx(0.0, 0.0)) return z;
    if (use_erfc_cf(z)) return 1.0 - erfc_cf(z);
    return erf_series(z);
}

cplx erfc_complex(cplx z)
{
    if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
    if (use_erfc_cf(z)) return erfc_cf(z);
    return 1.0 - erf_series(z);
}

cplx kummer_1f1(int a, int b, cplx z, double rel_tol, int max_terms)
{
    if (a < 1 || b < a) throw DomainError("kummer_1f1: requires b >= a >= 1");
    cplx t = 1.0, sum = 1.0;
    int small = 0;
    for (int k = 0; k < max_terms; ++k) {
        t *= double(a + k) * z / (double(b + k) * double(k + 1));
        sum += t;
        if (std::abs(t) <= rel_tol * std::abs(sum) && k + 1 > std::abs(z)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
    }
    throw TruncationError("kummer_1f1: series did not converge within " + std::to_string(max_terms) +
                          " terms");
}

double exp_integral_e1(double x)
{
    if (x <= 0.0) throw DomainError("exp_integral_e1: x <= 0");
    return e1_real(x);
}

double exp_integral_ei(double x)
{
    if (x >= 0.0) throw DomainError("exp_integral_ei: only negative arguments are supported");
    return -e1_real(-x);
}

double meijer_g_0313(int j, double mu, double arg, double tol)
{
    if (j < 0) throw DomainError("meijer_g_0313: j < 0");
    if (!(arg > 0.0)) throw DomainError("meijer_g_0313: arg must be positive");
    // any (a, p) with a^2 p = 1/arg works; this choice puts the peak near rho = 1
    double p = std::pow(arg, -0.5);
    double a = std::pow(arg, -0.25);
    auto f = [&](double rho) -> cplx {
        if (rho <= 0.0) return 0.0;
        double e = mu * std::log(rho) - a * a / rho - p * rho;
        if (e < -745.0) return 0.0;
        return hermite_h(j, a / std::sqrt(rho)) * std::exp(e);
    };
    QuadratureResult r = integrate_semi_infinite(f, 0.0, tol);
    if (!r.converged)
        throw QuadratureError("meijer_g_0313: quadrature did not converge (estimate " +
                              std::to_string(r.error_estimate) + ")");
    return std::pow(p, mu + 1.0) * std::ldexp(r.value.real(), -j);
}

}  // namespace slater
