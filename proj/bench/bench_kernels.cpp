// Serial vs OpenMP timings for the parallel kernels. Also checks that both
// paths return the same numbers.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "slater/amplitudes.hpp"
#include "slater/ellipsoidal.hpp"
#include "slater/golden.hpp"
#include "slater/parallel.hpp"
#include "slater/theorems.hpp"

using namespace slater;

namespace {

template <class F>
double seconds(F&& f, int reps)
{
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

template <class R>
void row(const char* name, std::function<R(Execution)> f, std::function<bool(const R&, const R&)> same, int reps)
{
    R a{}, b{};
    double ts = seconds([&] { a = f(Execution::serial); }, reps);
    double tp = seconds([&] { b = f(Execution::parallel); }, reps);
    std::printf("%-22s %10.3f ms %10.3f ms %7.2fx  %s\n", name, ts * 1e3, tp * 1e3, ts / tp,
                same(a, b) ? "identical" : "MISMATCH");
}

}  // namespace

int main()
{
    std::printf("threads: %d\n", hardware_threads());
    std::printf("%-22s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    std::vector<double> R;
    for (int i = 0; i < 64; ++i) R.push_back(0.05 + 0.03 * i);

    row<std::vector<QuadratureResult>>(
        "t_abc_oracle_sweep", [&](Execution ex) { return t_abc_oracle_sweep(R, 1e-9, ex); },
        [](auto& a, auto& b) {
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i].value != b[i].value) return false;
            return a.size() == b.size();
        },
        3);

    SlaterPair p{1.0, 2.0, 0.036, 1.0, 0.019};
    row<std::vector<cplx>>(
        "s1_series_terms", [&](Execution ex) { return s1_series_terms(24, p, 1e-11, ex); },
        [](auto& a, auto& b) { return a == b; }, 3);

    YukawaFormParams y{0.17, {1.0, 0.0}, 0.5, 0.23};
    row<SeriesEvaluation>(
        "theorem6_eval j=2", [&](Execution ex) { return theorem6_eval(2, y, {}, ex); },
        [](auto& a, auto& b) { return a.terms == b.terms; }, 3);

    std::vector<std::array<double, 3>> grid;
    for (double x1 : {0.2, 0.5, 1.0})
        for (double x2 : {0.3, 0.7, 1.5})
            for (double c : {-0.5, 0.1, 0.6}) grid.push_back({x1, x2, c});
    row<std::vector<double>>(
        "two_range_mos grid",
        [&](Execution ex) {
            return parallel_map(grid.size(),
                                [&](std::size_t i) { return two_range_mos_eval(1.0, grid[i][0], grid[i][1], grid[i][2], 400); },
                                ex);
        },
        [](auto& a, auto& b) { return a == b; }, 5);

    row<std::vector<CaseResult>>(
        "golden suite", [](Execution ex) { return run_golden({}, ex); },
        [](auto& a, auto& b) {
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < a[i].measurements.size(); ++j)
                    if (a[i].measurements[j].actual != b[i].measurements[j].actual) return false;
            return a.size() == b.size();
        },
        1);
}
