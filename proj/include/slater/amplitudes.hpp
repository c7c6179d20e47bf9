#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "slater/parallel.hpp"
#include "slater/quadrature.hpp"
#include "slater/series.hpp"

namespace slater {

struct SlaterPair {
    double eta1 = 1.0;
    double eta2 = 1.0;
    double x2 = 1.0;
    double k = 0.0;
    double k_dot_x2 = 0.0;

    void validate() const;
};

double s1_coulomb_closed(double eta1, double x2);
double s1_two_slater_closed(const SlaterPair& p);
double s1_equal_eta_closed(double eta2, double x2);

QuadratureResult s1_tau_oracle(const SlaterPair& p, double tol = 1e-10);
// direct spatial integral over (x1, u), k = 0 only
QuadratureResult s1_spatial_oracle(const SlaterPair& p, double tol = 1e-8);

cplx s1_series_n_term(int n, const SlaterPair& p, double tol = 1e-11);
std::vector<cplx> s1_series_terms(int n_max, const SlaterPair& p, double tol = 1e-11,
                                  Execution ex = Execution::serial);
cplx s1_n0_erf_closed(const SlaterPair& p);
cplx s1_general_term_gamma(int n, const SlaterPair& p);
// the unrepaired (m, j, J, K) sum; does not match the quadrature term, kept for comparison
cplx s1_general_term_gamma_raw(int n, const SlaterPair& p);

SeriesEvaluation cheshire_series(double eta1, double x2, double k, double k_dot_x2,
                                 const TruncationPolicy& policy = {});

cplx theorem2_angular(double eta2, double x1, double x2);
QuadratureResult theorem2_oracle(double eta2, double x1, double x2, double tol = 1e-12);

SeriesEvaluation theorem3_series(const SlaterPair& p, const SeriesIndexBounds& bounds = {},
                                 const TruncationPolicy& policy = {});
SeriesEvaluation theorem4_series(double eta2, double x2, const SeriesIndexBounds& bounds = {},
                                 const TruncationPolicy& policy = {});
// Sum of terms sharing the same outer index, in order.
std::vector<std::pair<int, cplx>> block_sums(const SeriesEvaluation& e);

double corollary6_n0_closed(double eta1, double eta2);

}  // namespace slater
