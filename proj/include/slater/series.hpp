#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "slater/parallel.hpp"

namespace slater {

using cplx = std::complex<double>;

struct TruncationPolicy {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_terms = 60;
    int tail_window = 2;
    bool allow_k_gt_1 = false;

    void validate() const;
};

// Default policy with SLATER_ADDITION_MAX_TERMS applied when set.
TruncationPolicy policy_from_env();

struct SeriesIndexBounds {
    int n_max = 8;
    int k_max = 9;
    bool even_only = true;
};

struct SeriesEvaluation {
    std::vector<cplx> terms;
    std::vector<cplx> partial_sums;
    cplx value{};
    bool converged = false;
    int terms_used = 0;
    // outer/inner summation index of each term (inner is -1 for single series)
    std::vector<int> outer;
    std::vector<int> inner;
    std::vector<std::string> warnings;
};

class KahanSum {
public:
    void add(cplx x);
    cplx value() const { return sum_; }

private:
    cplx sum_{};
    cplx c_{};
};

class SeriesAccumulator {
public:
    explicit SeriesAccumulator(const TruncationPolicy& policy);
    // returns true once the tail criterion holds
    bool push(cplx term, int outer, int inner = -1);
    bool tail_small() const;
    SeriesEvaluation finish();
    int size() const { return static_cast<int>(eval_.terms.size()); }
    cplx value() const { return sum_.value(); }
    void warn(std::string w) { eval_.warnings.push_back(std::move(w)); }

private:
    TruncationPolicy policy_;
    KahanSum sum_;
    SeriesEvaluation eval_;
    int small_run_ = 0;
};

// Sums term(0), term(1), ... until converged or max_terms. Terms are produced
// in blocks through parallel_map, so serial and parallel runs are identical.
SeriesEvaluation sum_series(const std::function<cplx(int)>& term,
                            const TruncationPolicy& policy,
                            Execution ex = Execution::serial);

// Largest |term| over |value|.
double cancellation_metric(const SeriesEvaluation& e);

}  // namespace slater
