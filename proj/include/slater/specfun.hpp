#pragma once

#include <complex>
#include <map>

namespace slater {

using cplx = std::complex<double>;

inline constexpr int kFactorialLimit = 170;

// Cached in floating point up to kFactorialLimit; CapacityError beyond.
double factorial(int n);
double double_factorial(int n);
double binomial(int n, int k);

// K_{n+1/2}(z) from the finite series. scaled=true returns e^z K.
cplx bessel_k_half(int n, cplx z, bool scaled = false);
// K_{m+1/2}(z) for any integer m, using K_{-nu} = K_nu.
cplx bessel_k_half_signed(int m, cplx z);
// log K_{n+1/2}(x) for real x > 0, any n (no factorial cache involved).
double log_bessel_k_half(int n, double x);

double bessel_i_half(int n, double x);
double log_bessel_i_half(int n, double x);

double legendre_p(int n, double u);
double hermite_h(int j, double x);

struct LegendreCoeffSet {
    int power = 0;
    std::map<int, double> coeffs;
};

LegendreCoeffSet cos_power_to_legendre(int j);

struct GammaConfig {
    int max_recurrence = 400;
};

// Gamma(a, z) for integer or half-integer a.
cplx upper_incomplete_gamma(double a, cplx z, const GammaConfig& cfg = {});
// gamma(a, x) for real a > 0, x >= 0.
double lower_incomplete_gamma(double a, double x);

cplx erf_complex(cplx z);
cplx erfc_complex(cplx z);

cplx kummer_1f1(int a, int b, cplx z, double rel_tol = 1e-16, int max_terms = 5000);

double exp_integral_ei(double x);
double exp_integral_e1(double x);

// G^{0,3}_{3,1}(arg | 1/2, 1, -mu ; (j+1)/2), through its inverse Gaussian
// transform integral.
double meijer_g_0313(int j, double mu, double arg, double tol = 1e-11);

}  // namespace slater
