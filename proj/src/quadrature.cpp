#include "slater/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "slater/errors.hpp"

namespace slater {

namespace {

constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208373640892, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Piece {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
};

Piece gk21(const SampledIntegrand& f, double a, double b)
{
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    Sample fc = f(c);
    cplx k = wgk[10] * fc.value;
    cplx g = 0.0;
    double carried = wgk[10] * fc.carried_error;
    for (int i = 0; i < 10; ++i) {
        double dx = h * xgk[i];
        Sample f1 = f(c - dx);
        Sample f2 = f(c + dx);
        k += wgk[i] * (f1.value + f2.value);
        carried += wgk[i] * (f1.carried_error + f2.carried_error);
        if (i % 2 == 1) g += wg[i / 2] * (f1.value + f2.value);
    }
    Piece p{a, b, k * h, 0.0};
    p.err = std::abs((k - g) * h) + carried * std::abs(h);
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()))
        throw QuadratureError("non-finite integrand value on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    return p;
}

}  // namespace

QuadratureResult operator+(const QuadratureResult& a, const QuadratureResult& b)
{
    return {a.value + b.value, a.error_estimate + b.error_estimate, a.evaluations + b.evaluations,
            a.converged && b.converged};
}

QuadratureResult operator*(cplx s, const QuadratureResult& r)
{
    return {s * r.value, std::abs(s) * r.error_estimate, r.evaluations, r.converged};
}

QuadratureResult integrate_adaptive(const SampledIntegrand& f, double a, double b, double tol,
                                    long budget)
{
    if (!(a < b)) throw DomainError("integrate: requires a < b");
    if (!(tol > 0.0)) throw DomainError("integrate: tol must be positive");
    std::vector<Piece> heap;  // max-heap on err
    std::vector<Piece> frozen;
    QuadratureResult res;
    auto resum = [&] {
        cplx total = 0.0;
        double err = 0.0;
        for (const auto& p : heap) total += p.value, err += p.err;
        for (const auto& p : frozen) total += p.value, err += p.err;
        res.value = total;
        res.error_estimate = err;
    };
    heap.push_back(gk21(f, a, b));
    res.evaluations = 21;
    resum();
    for (long iter = 1;; ++iter) {
        if (res.error_estimate <= tol * std::abs(res.value) + kQuadAbsFloor) {
            resum();
            if (res.error_estimate <= tol * std::abs(res.value) + kQuadAbsFloor) break;
        }
        if (heap.empty() || res.evaluations + 42 > budget) break;
        std::pop_heap(heap.begin(), heap.end());
        Piece worst = heap.back();
        heap.pop_back();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            (worst.b - worst.a) < 1e-14 * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        Piece l = gk21(f, worst.a, mid);
        Piece r = gk21(f, mid, worst.b);
        res.evaluations += 42;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end());
        res.value += l.value + r.value - worst.value;
        res.error_estimate += l.err + r.err - worst.err;
        if (iter % 64 == 0) resum();
    }
    resum();
    res.converged = res.error_estimate <= tol * std::abs(res.value) + kQuadAbsFloor;
    return res;
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, double tol, long budget)
{
    return integrate_adaptive([&](double x) { return Sample{f(x), 0.0}; }, a, b, tol, budget);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, double tol, long budget)
{
    auto g = [&](double u) -> Sample {
        double w = 1.0 - u;
        double t = a + u / w;
        if (!std::isfinite(t)) return {0.0, 0.0};
        cplx v = f(t);
        if (v == cplx(0.0, 0.0)) return {0.0, 0.0};
        return {v / (w * w), 0.0};
    };
    return integrate_adaptive(g, 0.0, 1.0, tol, budget);
}

QuadratureResult integrate(const Integrand& f, double a, double b, double tol, long budget)
{
    if (std::isinf(b) && b > 0) return integrate_semi_infinite(f, a, tol, budget);
    return integrate_finite(f, a, b, tol, budget);
}

QuadratureResult integrate_2d(const Integrand2& f, const Rect& dom, double tol, long budget)
{
    long used = 0;
    bool inner_ok = true;
    double inner_tol = tol * 0.1;
    auto inner = [&](double x) -> Sample {
        long left = std::max(budget - used, 0L);
        if (left < 21) {
            inner_ok = false;
            return {0.0, 0.0};
        }
        QuadratureResult r = integrate([&](double y) { return f(x, y); }, dom.c, dom.d, inner_tol, left);
        used += r.evaluations;
        if (!r.converged) inner_ok = false;
        return {r.value, r.error_estimate};
    };
    QuadratureResult out;
    if (std::isinf(dom.b) && dom.b > 0) {
        double a = dom.a;
        auto g = [&](double u) -> Sample {
            double w = 1.0 - u;
            double t = a + u / w;
            if (!std::isfinite(t)) return {0.0, 0.0};
            Sample s = inner(t);
            double jac = 1.0 / (w * w);
            return {s.value * jac, s.carried_error * jac};
        };
        out = integrate_adaptive(g, 0.0, 1.0, tol, budget);
    } else {
        out = integrate_adaptive(inner, dom.a, dom.b, tol, budget);
    }
    out.evaluations = used;
    out.converged = out.converged && inner_ok && used <= budget;
    return out;
}

}  // namespace slater
