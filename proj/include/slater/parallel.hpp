#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace slater {

enum class Execution { serial, parallel };

// Evaluates f(0..n-1). The serial path is the reference; the OpenMP path must
// agree with it bit for bit since every f(i) is computed independently.
template <class F>
auto parallel_map(std::size_t n, F f, Execution ex)
    -> std::vector<decltype(f(std::size_t{}))>
{
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(n);
    if (ex == Execution::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errs(n);
    const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < m; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

int hardware_threads();

}  // namespace slater
