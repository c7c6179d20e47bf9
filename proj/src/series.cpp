#include "slater/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>

#include "slater/errors.hpp"

namespace slater {

void TruncationPolicy::validate() const
{
    if (!(rel_tol > 0.0)) throw DomainError("policy: rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw DomainError("policy: abs_tol must be nonnegative");
    if (tail_window < 1) throw DomainError("policy: tail_window must be >= 1");
    if (max_terms < tail_window) throw DomainError("policy: max_terms must be >= tail_window");
}

TruncationPolicy policy_from_env()
{
    TruncationPolicy p;
    if (const char* s = std::getenv("SLATER_ADDITION_MAX_TERMS"); s && *s) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (*end != '\0' || v < 1 || v > 100000)
            throw DomainError(std::string("SLATER_ADDITION_MAX_TERMS: invalid value '") + s + "'");
        p.max_terms = static_cast<int>(v);
        p.tail_window = std::min(p.tail_window, p.max_terms);
    }
    return p;
}

void KahanSum::add(cplx x)
{
    cplx y = x - c_;
    cplx t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
}

SeriesAccumulator::SeriesAccumulator(const TruncationPolicy& policy) : policy_(policy)
{
    policy_.validate();
}

bool SeriesAccumulator::push(cplx term, int outer, int inner)
{
    sum_.add(term);
    eval_.terms.push_back(term);
    eval_.partial_sums.push_back(sum_.value());
    eval_.outer.push_back(outer);
    eval_.inner.push_back(inner);
    double bound = policy_.rel_tol * std::abs(sum_.value()) + policy_.abs_tol;
    small_run_ = std::abs(term) < bound ? small_run_ + 1 : 0;
    return tail_small();
}

bool SeriesAccumulator::tail_small() const
{
    // the run must hold against the final value, not only the value at the time
    int n = size();
    if (small_run_ < policy_.tail_window || n < policy_.tail_window) return false;
    double bound = policy_.rel_tol * std::abs(sum_.value()) + policy_.abs_tol;
    for (int i = n - policy_.tail_window; i < n; ++i)
        if (!(std::abs(eval_.terms[i]) < bound)) return false;
    return true;
}

SeriesEvaluation SeriesAccumulator::finish()
{
    eval_.value = sum_.value();
    eval_.terms_used = size();
    eval_.converged = tail_small();
    return eval_;
}

namespace {

struct Slot {
    cplx v{};
    std::exception_ptr e;
};

}  // namespace

SeriesEvaluation sum_series(const std::function<cplx(int)>& term, const TruncationPolicy& policy,
                            Execution ex)
{
    SeriesAccumulator acc(policy);
    int block = ex == Execution::serial ? 1 : std::max(2, 2 * hardware_threads());
    int n = 0;
    while (n < policy.max_terms) {
        int len = std::min(block, policy.max_terms - n);
        auto slots = parallel_map(
            static_cast<std::size_t>(len),
            [&](std::size_t i) {
                Slot s;
                try {
                    s.v = term(n + static_cast<int>(i));
                } catch (...) {
                    s.e = std::current_exception();
                }
                return s;
            },
            ex);
        for (const auto& s : slots) {
            if (s.e) std::rethrow_exception(s.e);
            if (acc.push(s.v, n)) return acc.finish();
            ++n;
        }
    }
    return acc.finish();
}

double cancellation_metric(const SeriesEvaluation& e)
{
    double m = 0.0;
    for (const auto& t : e.terms) m = std::max(m, std::abs(t));
    double v = std::abs(e.value);
    return v > 0 ? m / v : INFINITY;
}

}  // namespace slater
