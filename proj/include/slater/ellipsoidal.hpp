#pragma once

#include <vector>

#include "slater/parallel.hpp"
#include "slater/quadrature.hpp"
#include "slater/series.hpp"

namespace slater {

struct EllipsoidalParams {
    double R = 1.0;
    double lambda = 1.0;
    double mu = 0.0;

    void validate() const;
};

double t_abc_integrand(const EllipsoidalParams& p);

QuadratureResult t_abc_oracle(double R, double tol = 1e-9);
double t_abc_exact(double R);

// n-th term; throws RangeError when the phase does not collapse to a real value
double t_abc_series_term(int n, double R);
SeriesEvaluation t_abc_series(double R, int n_terms, const TruncationPolicy& policy = {},
                              Execution ex = Execution::serial);

struct StallReport {
    bool stalled = false;
    int index = -1;
    double magnitude = 0.0;
};

inline constexpr int kStallWindow = 5;

StallReport stall_detector(const SeriesEvaluation& e, int window = kStallWindow);

std::vector<double> t_abc_exact_sweep(const std::vector<double>& R, Execution ex);
std::vector<QuadratureResult> t_abc_oracle_sweep(const std::vector<double>& R, double tol,
                                                 Execution ex);

}  // namespace slater
