#pragma once

#include <complex>
#include <functional>
#include <limits>

namespace slater {

using cplx = std::complex<double>;

inline constexpr long kDefaultBudget = 1'000'000;
inline constexpr double kQuadAbsFloor = 1e-15;

struct QuadratureResult {
    cplx value{};
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

QuadratureResult operator+(const QuadratureResult& a, const QuadratureResult& b);
QuadratureResult operator*(cplx s, const QuadratureResult& r);

using Integrand = std::function<cplx(double)>;
using Integrand2 = std::function<cplx(double, double)>;

// f may return a value together with an error already carried by it (inner
// integrals); the carried error is integrated alongside.
struct Sample {
    cplx value;
    double carried_error = 0.0;
};
using SampledIntegrand = std::function<Sample(double)>;

QuadratureResult integrate_adaptive(const SampledIntegrand& f, double a, double b,
                                    double tol, long budget = kDefaultBudget);

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  double tol = 1e-10, long budget = kDefaultBudget);

// t = a + u/(1-u), u in [0, 1)
QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         double tol = 1e-10, long budget = kDefaultBudget);

// finite or semi-infinite by the value of b
QuadratureResult integrate(const Integrand& f, double a, double b,
                           double tol = 1e-10, long budget = kDefaultBudget);

struct Rect {
    double a, b;  // outer, b may be +inf
    double c, d;  // inner, d may be +inf
};

QuadratureResult integrate_2d(const Integrand2& f, const Rect& dom,
                              double tol = 1e-9, long budget = kDefaultBudget);

}  // namespace slater
