#pragma once

#include <complex>
#include <vector>

#include "slater/parallel.hpp"
#include "slater/series.hpp"

namespace slater {

// e^{-x2 L}/L with L = sqrt(B k^2 + C)
struct YukawaFormParams {
    double B = 0.0;
    cplx C{1.0, 0.0};
    double k = 0.0;
    double x2 = 1.0;

    void validate(bool allow_k_gt_1 = false) const;
    cplx L() const;
};

cplx yukawa_form(const YukawaFormParams& p);
cplx theorem5_lhs(const YukawaFormParams& p);
cplx theorem6_lhs(int j, const YukawaFormParams& p);

cplx theorem1_term(int n, const YukawaFormParams& p);
cplx theorem5_term(int n, const YukawaFormParams& p);
cplx theorem6_term(int n, int j, const YukawaFormParams& p, double quad_tol = 1e-11);

SeriesEvaluation theorem1_eval(const YukawaFormParams& p, const TruncationPolicy& policy = {},
                               Execution ex = Execution::serial);
SeriesEvaluation theorem5_eval(const YukawaFormParams& p, const TruncationPolicy& policy = {},
                               Execution ex = Execution::serial);
SeriesEvaluation theorem6_eval(int j, const YukawaFormParams& p, const TruncationPolicy& policy = {},
                               Execution ex = Execution::serial);

enum class Corollary { C1, C2, C3, C4, C5, C6 };

const char* corollary_name(Corollary c);

struct CorollaryConfig {
    Corollary variant = Corollary::C4;
    double eta = 1.0;
    // spherical: x1, x2, cos_theta; Cartesian: x1, y1, z1, z2
    double x1 = 0.0, x2 = 0.0, cos_theta = 0.0;
    double y1 = 0.0, z1 = 0.0, z2 = 0.0;
    double k = 1.0;
    bool conjugate_branch = false;

    bool cartesian() const;
    void validate() const;
    double distance() const;  // |x1 - x2| in the configured coordinates
};

YukawaFormParams corollary_to_params(const CorollaryConfig& cfg);
// e^{-eta x12}/x12 evaluated directly
double slater_direct(const CorollaryConfig& cfg);

cplx corollary1_legendre_term(int n, const CorollaryConfig& cfg);
SeriesEvaluation corollary1_legendre_eval(const CorollaryConfig& cfg,
                                          const TruncationPolicy& policy = {});

struct TwoRangeResult {
    double value = 0.0;
    std::vector<double> terms;
    bool boundary = false;  // x1 == x2
};

TwoRangeResult two_range_mos(double eta, double x1, double x2, double cos_theta, int N);
double two_range_mos_eval(double eta, double x1, double x2, double cos_theta, int N);

}  // namespace slater
