#include "slater/theorems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slater/errors.hpp"
#include "slater/specfun.hpp"

namespace slater {

namespace {

constexpr double kPi = std::numbers::pi;


// sqrt(2/pi) (-B k^2/2)^n / n! x2^{n+1/2}
cplx common_prefactor(int n, const YukawaFormParams& p)
{
    double r = std::sqrt(2.0 / kPi) * std::sqrt(p.x2);
    double q = -0.5 * p.B * p.k * p.k * p.x2;
    for (int i = 1; i <= n; ++i) r *= q / i;
    return r;
}

SeriesEvaluation single_term(cplx t)
{
    SeriesEvaluation e;
    e.terms = {t};
    e.partial_sums = {t};
    e.value = t;
    e.converged = true;
    e.terms_used = 1;
    e.outer = {0};
    e.inner = {-1};
    return e;
}

bool trivial_series(const YukawaFormParams& p) { return p.B == 0.0 || p.k == 0.0; }

}  // namespace

void YukawaFormParams::validate(bool allow_k_gt_1) const
{
    if (!(k >= 0.0)) throw DomainError("k must be nonnegative");
    if (k > 1.0 && !allow_k_gt_1)
        throw DomainError("k = " + std::to_string(k) + " > 1; the series is only stated for k <= 1");
    if (!(x2 > 0.0)) throw DomainError("x2 must be positive");
    if (!std::isfinite(B) || !std::isfinite(C.real()) || !std::isfinite(C.imag()))
        throw DomainError("B and C must be finite");
    if (C == cplx(0.0, 0.0)) throw PoleError("C = 0");
    if (B * k * k + C == cplx(0.0, 0.0)) throw PoleError("B k^2 + C = 0");
}

cplx YukawaFormParams::L() const
{
    cplx s = B * k * k + C;
    // keep the sign of a zero imaginary part so the conjugate branch survives
    if (C.imag() == 0.0) s = cplx(s.real(), C.imag());
    return std::sqrt(s);
}

cplx yukawa_form(const YukawaFormParams& p)
{
    p.validate(true);
    cplx L = p.L();
    return std::exp(-p.x2 * L) / L;
}

cplx theorem5_lhs(const YukawaFormParams& p)
{
    p.validate(true);
    return std::exp(-p.x2 * p.L());
}

cplx theorem6_lhs(int j, const YukawaFormParams& p)
{
    p.validate(true);
    cplx L = p.L();
    return std::pow(L, double(j - 1)) * std::exp(-p.x2 * L);
}

cplx theorem1_term(int n, const YukawaFormParams& p)
{
    if (n < 0) throw DomainError("term index must be nonnegative");
    cplx sc = std::sqrt(p.C);
    return common_prefactor(n, p) * std::pow(p.C, -0.5 * n - 0.25) * bessel_k_half(n, p.x2 * sc);
}

cplx theorem5_term(int n, const YukawaFormParams& p)
{
    if (n < 0) throw DomainError("term index must be nonnegative");
    cplx sc = std::sqrt(p.C);
    return common_prefactor(n, p) * std::pow(p.C, 0.25 - 0.5 * n) *
           bessel_k_half_signed(n - 1, p.x2 * sc);
}

cplx theorem6_term(int n, int j, const YukawaFormParams& p, double quad_tol)
{
    if (n < 0 || j < 0) throw DomainError("term indices must be nonnegative");
    if (p.C.imag() != 0.0 || !(p.C.real() > 0.0))
        throw DomainError("theorem6 requires real positive C");
    double C = p.C.real();
    double r = 1.0 / std::sqrt(kPi);
    double q = -p.B * p.k * p.k;
    for (int i = 1; i <= n; ++i) r *= q / i;
    double mu = n - 0.5 * (j + 1);
    double g = meijer_g_0313(j, mu, 4.0 / (C * p.x2 * p.x2), quad_tol);
    return r * std::pow(C, 0.5 * j - n - 0.5) * g;
}

SeriesEvaluation theorem1_eval(const YukawaFormParams& p, const TruncationPolicy& policy,
                               Execution ex)
{
    p.validate(policy.allow_k_gt_1);
    if (trivial_series(p)) return single_term(theorem1_term(0, p));
    return sum_series([&](int n) { return theorem1_term(n, p); }, policy, ex);
}

SeriesEvaluation theorem5_eval(const YukawaFormParams& p, const TruncationPolicy& policy,
                               Execution ex)
{
    p.validate(policy.allow_k_gt_1);
    if (trivial_series(p)) return single_term(theorem5_term(0, p));
    return sum_series([&](int n) { return theorem5_term(n, p); }, policy, ex);
}

SeriesEvaluation theorem6_eval(int j, const YukawaFormParams& p, const TruncationPolicy& policy,
                               Execution ex)
{
    p.validate(policy.allow_k_gt_1);
    if (j < 0) throw DomainError("j must be nonnegative");
    if (trivial_series(p)) return single_term(theorem6_term(0, j, p));
    return sum_series([&](int n) { return theorem6_term(n, j, p); }, policy, ex);
}

const char* corollary_name(Corollary c)
{
    switch (c) {
    case Corollary::C1: return "C1";
    case Corollary::C2: return "C2";
    case Corollary::C3: return "C3";
    case Corollary::C4: return "C4";
    case Corollary::C5: return "C5";
    case Corollary::C6: return "C6";
    }
    return "?";
}

bool CorollaryConfig::cartesian() const
{
    return variant == Corollary::C5 || variant == Corollary::C6;
}

void CorollaryConfig::validate() const
{
    if (!(eta > 0.0)) throw DomainError("eta must be positive");
    if (!(k >= 0.0)) throw DomainError("k must be nonnegative");
    if (cartesian()) {
        if (!(x1 * x1 + y1 * y1 > 0.0)) throw DomainError("x1^2 + y1^2 must be positive");
    } else {
        if (!(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("x1 and x2 must be positive");
        if (std::abs(cos_theta) > 1.0) throw DomainError("|cos_theta| must be <= 1");
    }
}

double CorollaryConfig::distance() const
{
    if (cartesian()) return std::sqrt(x1 * x1 + y1 * y1 + (z1 - z2) * (z1 - z2));
    return std::sqrt(std::max(0.0, x1 * x1 + x2 * x2 - 2.0 * x1 * x2 * cos_theta));
}

YukawaFormParams corollary_to_params(const CorollaryConfig& cfg)
{
    cfg.validate();
    YukawaFormParams p;
    p.k = cfg.k;
    p.x2 = cfg.eta;
    double d = 2.0 * cfg.x1 * cfg.x2 * cfg.cos_theta;
    double C = 0.0;
    switch (cfg.variant) {
    case Corollary::C1:
        C = cfg.x2 * cfg.x2;
        p.B = cfg.x1 * cfg.x1 - d;
        break;
    case Corollary::C2:
        C = cfg.x1 * cfg.x1;
        p.B = cfg.x2 * cfg.x2 - d;
        break;
    case Corollary::C3:
        C = -d;
        p.B = cfg.x1 * cfg.x1 + cfg.x2 * cfg.x2;
        break;
    case Corollary::C4:
        C = cfg.x1 * cfg.x1 + cfg.x2 * cfg.x2;
        p.B = -d;
        break;
    case Corollary::C5:
        C = (cfg.z1 - cfg.z2) * (cfg.z1 - cfg.z2);
        p.B = cfg.x1 * cfg.x1 + cfg.y1 * cfg.y1;
        break;
    case Corollary::C6:
        C = cfg.x1 * cfg.x1 + cfg.y1 * cfg.y1;
        p.B = (cfg.z1 - cfg.z2) * (cfg.z1 - cfg.z2);
        break;
    }
    if (C == 0.0) throw PoleError(std::string(corollary_name(cfg.variant)) + ": mapped C = 0");
    p.C = cplx(C, cfg.conjugate_branch ? -0.0 : 0.0);
    return p;
}

double slater_direct(const CorollaryConfig& cfg)
{
    cfg.validate();
    double r = cfg.distance();
    if (r == 0.0) throw PoleError("coincident points");
    return std::exp(-cfg.eta * r) / r;
}

cplx corollary1_legendre_term(int n, const CorollaryConfig& cfg)
{
    if (cfg.variant != Corollary::C1) throw DomainError("corollary1_legendre_term requires C1");
    YukawaFormParams p = corollary_to_params(cfg);
    p.B = 1.0;  // B^n is expanded below
    cplx pre = theorem1_term(n, p);
    double u = cfg.cos_theta;
    double outer = 0.0;
    for (int j = 0; j <= n; ++j) {
        auto set = cos_power_to_legendre(j);
        double inner = 0.0;
        for (const auto& [m, c] : set.coeffs) inner += c * legendre_p(m, u);
        outer += binomial(n, j) * std::pow(cfg.x1, 2.0 * (n - j)) *
                 std::pow(-2.0 * cfg.x1 * cfg.x2, j) * inner;
    }
    return pre * outer;
}

SeriesEvaluation corollary1_legendre_eval(const CorollaryConfig& cfg, const TruncationPolicy& policy)
{
    YukawaFormParams p = corollary_to_params(cfg);
    p.validate(policy.allow_k_gt_1);
    if (trivial_series(p)) return single_term(theorem1_term(0, p));
    return sum_series([&](int n) { return corollary1_legendre_term(n, cfg); }, policy);
}

TwoRangeResult two_range_mos(double eta, double x1, double x2, double cos_theta, int N)
{
    if (!(eta > 0.0)) throw DomainError("eta must be positive");
    if (!(x1 > 0.0) || !(x2 > 0.0)) throw DomainError("x1 and x2 must be positive");
    if (std::abs(cos_theta) > 1.0) throw DomainError("|cos_theta| must be <= 1");
    if (N < 0) throw DomainError("N must be nonnegative");
    TwoRangeResult r;
    r.boundary = x1 == x2;
    double lo = std::min(x1, x2), hi = std::max(x1, x2);
    double pre = 1.0 / std::sqrt(x1 * x2);
    double sum = 0.0;
    for (int n = 0; n <= N; ++n) {
        double e = log_bessel_i_half(n, eta * lo) + log_bessel_k_half(n, eta * hi);
        double t = pre * (2 * n + 1) * legendre_p(n, cos_theta) * std::exp(e);
        r.terms.push_back(t);
        sum += t;
    }
    r.value = sum;
    return r;
}

double two_range_mos_eval(double eta, double x1, double x2, double cos_theta, int N)
{
    return two_range_mos(eta, x1, x2, cos_theta, N).value;
}

}  // namespace slater
