#include "slater/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "slater/amplitudes.hpp"
#include "slater/ellipsoidal.hpp"
#include "slater/errors.hpp"
#include "slater/golden.hpp"
#include "slater/quadrature.hpp"
#include "slater/series.hpp"
#include "slater/specfun.hpp"
#include "slater/theorems.hpp"

namespace slater {

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v)
{
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw UsageError("parameter '" + key + "': not a number: '" + v + "'");
    }
    if (pos != v.size()) throw UsageError("parameter '" + key + "': trailing characters in '" + v + "'");
    return x;
}

// keys that configure the run rather than the target
const std::set<std::string> kControlKeys = {"target", "oracle",    "format",      "tol",          "digits",
                                            "rel_tol", "abs_tol",  "max_terms",   "tail_window",  "allow_k_gt_1",
                                            "output"};

class Args {
public:
    explicit Args(Scenario kv) : kv_(std::move(kv)) {}

    bool has(const std::string& k) const { return kv_.count(k) > 0; }

    const std::string& raw(const std::string& k) const
    {
        auto it = kv_.find(k);
        if (it == kv_.end()) throw UsageError("missing parameter '" + k + "'");
        return it->second;
    }

    double num(const std::string& k) const { return parse_real(k, raw(k)); }
    double num(const std::string& k, double def) const { return has(k) ? num(k) : def; }

    int integer(const std::string& k) const
    {
        double x = num(k);
        if (x != std::floor(x) || std::abs(x) > 1e9) throw UsageError("parameter '" + k + "' must be an integer");
        return static_cast<int>(x);
    }
    int integer(const std::string& k, int def) const { return has(k) ? integer(k) : def; }

    cplx complex(const std::string& k) const
    {
        try {
            return parse_complex(raw(k));
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("parameter '" + k + "': not a complex number: '" + raw(k) + "'");
        }
    }

    std::string str(const std::string& k, const std::string& def) const { return has(k) ? raw(k) : def; }

    bool flag(const std::string& k) const
    {
        if (!has(k)) return false;
        std::string v = raw(k);
        if (v == "1" || v == "true" || v == "yes") return true;
        if (v == "0" || v == "false" || v == "no") return false;
        throw UsageError("parameter '" + k + "' must be true or false");
    }

private:
    Scenario kv_;
};

struct Ctx {
    TruncationPolicy policy;
    double quad_tol = 1e-10;
};

struct Outcome {
    cplx value{};
    bool has_status = false;
    bool converged = true;
    int terms_used = 1;
    std::optional<SeriesEvaluation> series;
    std::vector<std::pair<std::string, std::string>> extra;
    double error_estimate = -1.0;
};

Outcome of_value(cplx v) { return Outcome{v}; }

Outcome of_series(SeriesEvaluation e)
{
    Outcome o;
    o.value = e.value;
    o.has_status = true;
    o.converged = e.converged;
    o.terms_used = e.terms_used;
    o.series = std::move(e);
    return o;
}

Outcome of_quad(const QuadratureResult& q)
{
    Outcome o;
    o.value = q.value;
    o.has_status = true;
    o.converged = q.converged;
    o.terms_used = 1;
    o.error_estimate = q.error_estimate;
    o.extra.emplace_back("evaluations", std::to_string(q.evaluations));
    return o;
}

struct Target {
    std::string name;
    std::vector<std::string> params;
    std::function<Outcome(const Args&, const Ctx&)> run;
    std::string oracle;
};

const std::vector<std::string> kYukawa = {"B", "C", "k", "x2"};
const std::vector<std::string> kPair = {"eta1", "eta2", "x2", "k", "k_dot_x2"};
const std::vector<std::string> kCorollary = {"variant", "eta", "x1", "x2", "cos_theta", "y1",
                                             "z1",      "z2",  "k",  "conjugate_branch"};

std::vector<std::string> plus(std::vector<std::string> a, const std::vector<std::string>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

YukawaFormParams yukawa(const Args& a)
{
    YukawaFormParams p;
    p.B = a.num("B");
    p.C = a.complex("C");
    p.k = a.num("k");
    p.x2 = a.num("x2");
    return p;
}

SlaterPair pair_of(const Args& a, bool need_eta2 = true)
{
    SlaterPair p;
    p.eta1 = a.num("eta1");
    p.eta2 = need_eta2 ? a.num("eta2") : p.eta1;
    p.x2 = a.num("x2");
    p.k = a.num("k", 0.0);
    p.k_dot_x2 = a.num("k_dot_x2", p.k * p.x2);
    return p;
}

Corollary parse_variant(const std::string& s)
{
    for (auto v : {Corollary::C1, Corollary::C2, Corollary::C3, Corollary::C4, Corollary::C5, Corollary::C6})
        if (s == corollary_name(v)) return v;
    throw UsageError("variant must be one of C1..C6, got '" + s + "'");
}

CorollaryConfig corollary_of(const Args& a)
{
    CorollaryConfig c;
    c.variant = parse_variant(a.str("variant", "C4"));
    c.eta = a.num("eta");
    if (c.cartesian()) {
        c.x1 = a.num("x1");
        c.y1 = a.num("y1");
        c.z1 = a.num("z1");
        c.z2 = a.num("z2");
    } else {
        c.x1 = a.num("x1");
        c.x2 = a.num("x2");
        c.cos_theta = a.num("cos_theta");
    }
    c.k = a.num("k", 1.0);
    c.conjugate_branch = a.flag("conjugate_branch");
    return c;
}

SeriesIndexBounds bounds_of(const Args& a, int n_max, int k_max)
{
    return {a.integer("n_max", n_max), a.integer("k_max", k_max), true};
}

Integrand integrand_1d(const Args& a)
{
    std::string name = a.str("integrand", "identity");
    double rho = a.num("rho", 1.0), C = a.num("C", 1.0), x2 = a.num("x2", 1.0);
    if (name == "identity") return [](double t) { return cplx(t); };
    if (name == "legendre2_squared") return [](double t) { double p = legendre_p(2, t); return cplx(p * p); };
    if (name == "exp") return [](double t) { return cplx(std::exp(-t)); };
    if (name == "gaussian_moment") return [rho](double t) { return cplx(std::exp(-rho * t * t) * t * t); };
    if (name == "yukawa_rho")
        return [C, x2](double t) { return t > 0 ? cplx(std::exp(-C * t - x2 * x2 / (4 * t)) / std::sqrt(t)) : cplx(0.0); };
    throw UsageError("unknown integrand '" + name +
                     "' (identity, legendre2_squared, exp, gaussian_moment, yukawa_rho)");
}

Integrand2 integrand_2d(const Args& a)
{
    std::string name = a.str("integrand", "unit");
    double R = a.num("R", 1.0);
    if (name == "unit") return [](double, double) { return cplx(1.0); };
    if (name == "t_abc") return [R](double l, double m) { return cplx(t_abc_integrand({R, l, m})); };
    throw UsageError("unknown 2d integrand '" + name + "' (unit, t_abc)");
}

const std::vector<std::string> kIntegrandKeys = {"integrand", "rho", "C", "x2", "R"};

const std::vector<Target>& registry()
{
    static const std::vector<Target> t = {
        // special functions
        {"bessel_k_half", {"n", "z", "scaled"},
         [](const Args& a, const Ctx&) { return of_value(bessel_k_half(a.integer("n"), a.complex("z"), a.flag("scaled"))); },
         "bessel_k_integral"},
        {"bessel_k_integral", {"n", "z"},
         [](const Args& a, const Ctx& c) {
             double z = a.num("z");
             double nu = a.integer("n") + 0.5;
             return of_quad(integrate_semi_infinite(
                 [&](double t) { return cplx(std::exp(-z * std::cosh(t)) * std::cosh(nu * t)); }, 0.0, c.quad_tol));
         }},
        {"bessel_i_half", {"n", "x"},
         [](const Args& a, const Ctx&) { return of_value(bessel_i_half(a.integer("n"), a.num("x"))); }},
        {"legendre_p", {"n", "u"},
         [](const Args& a, const Ctx&) { return of_value(legendre_p(a.integer("n"), a.num("u"))); }},
        {"cos_power_to_legendre", {"j"},
         [](const Args& a, const Ctx&) {
             auto s = cos_power_to_legendre(a.integer("j"));
             Outcome o;
             SeriesEvaluation e;
             KahanSum sum;
             for (auto& [m, c] : s.coeffs) {
                 e.terms.push_back(c);
                 sum.add(c);
                 e.partial_sums.push_back(sum.value());
                 e.outer.push_back(m);
                 e.inner.push_back(-1);
             }
             e.value = sum.value();
             e.converged = true;
             e.terms_used = static_cast<int>(e.terms.size());
             o = of_series(e);
             o.has_status = false;
             return o;
         }},
        {"upper_incomplete_gamma", {"a", "z"},
         [](const Args& a, const Ctx&) { return of_value(upper_incomplete_gamma(a.num("a"), a.complex("z"))); }},
        {"erf_complex", {"z"}, [](const Args& a, const Ctx&) { return of_value(erf_complex(a.complex("z"))); }},
        {"kummer_1f1", {"a", "b", "z"},
         [](const Args& a, const Ctx&) {
             return of_value(kummer_1f1(a.integer("a"), a.integer("b"), a.complex("z")));
         },
         "kummer_integral"},
        {"kummer_integral", {"a", "b", "z"},
         [](const Args& a, const Ctx& c) {
             int ai = a.integer("a"), bi = a.integer("b");
             cplx z = a.complex("z");
             if (ai < 1 || bi <= ai) throw UsageError("kummer_integral requires b > a >= 1");
             double beta = std::exp(std::lgamma(ai) + std::lgamma(bi - ai) - std::lgamma(bi));
             auto q = integrate_finite(
                 [&](double t) { return std::exp(z * t) * std::pow(t, ai - 1) * std::pow(1 - t, bi - ai - 1); }, 0.0,
                 1.0, c.quad_tol);
             return of_quad((1.0 / beta) * q);
         }},
        {"hermite_h", {"j", "x"},
         [](const Args& a, const Ctx&) { return of_value(hermite_h(a.integer("j"), a.num("x"))); }},
        {"exp_integral_ei", {"x"}, [](const Args& a, const Ctx&) { return of_value(exp_integral_ei(a.num("x"))); }},
        {"meijer_g_0313", {"j", "mu", "arg"},
         [](const Args& a, const Ctx& c) {
             return of_value(meijer_g_0313(a.integer("j"), a.num("mu"), a.num("arg"), std::min(c.quad_tol, 1e-11)));
         }},
        // quadrature
        {"integrate_finite", plus({"a", "b"}, kIntegrandKeys),
         [](const Args& a, const Ctx& c) { return of_quad(integrate_finite(integrand_1d(a), a.num("a"), a.num("b"), c.quad_tol)); }},
        {"integrate_semi_infinite", plus({"a"}, kIntegrandKeys),
         [](const Args& a, const Ctx& c) { return of_quad(integrate_semi_infinite(integrand_1d(a), a.num("a"), c.quad_tol)); }},
        {"integrate_2d", plus({"a", "b", "c", "d"}, kIntegrandKeys),
         [](const Args& a, const Ctx& c) {
             Rect r{a.num("a"), a.num("b"), a.num("c"), a.num("d")};
             return of_quad(integrate_2d(integrand_2d(a), r, c.quad_tol));
         }},
        // theorems
        {"yukawa_form", kYukawa, [](const Args& a, const Ctx&) { return of_value(yukawa_form(yukawa(a))); }},
        {"theorem5_lhs", kYukawa, [](const Args& a, const Ctx&) { return of_value(theorem5_lhs(yukawa(a))); }},
        {"theorem6_lhs", plus({"j"}, kYukawa),
         [](const Args& a, const Ctx&) { return of_value(theorem6_lhs(a.integer("j"), yukawa(a))); }},
        {"theorem1", kYukawa,
         [](const Args& a, const Ctx& c) { return of_series(theorem1_eval(yukawa(a), c.policy)); }, "yukawa_form"},
        {"theorem1_term", plus({"n"}, kYukawa),
         [](const Args& a, const Ctx&) { return of_value(theorem1_term(a.integer("n"), yukawa(a))); }},
        {"theorem5", kYukawa,
         [](const Args& a, const Ctx& c) { return of_series(theorem5_eval(yukawa(a), c.policy)); }, "theorem5_lhs"},
        {"theorem5_term", plus({"n"}, kYukawa),
         [](const Args& a, const Ctx&) { return of_value(theorem5_term(a.integer("n"), yukawa(a))); }},
        {"theorem6", plus({"j"}, kYukawa),
         [](const Args& a, const Ctx& c) { return of_series(theorem6_eval(a.integer("j"), yukawa(a), c.policy)); },
         "theorem6_lhs"},
        {"theorem6_term", plus({"n", "j"}, kYukawa),
         [](const Args& a, const Ctx&) { return of_value(theorem6_term(a.integer("n"), a.integer("j"), yukawa(a))); }},
        {"corollary", kCorollary,
         [](const Args& a, const Ctx& c) {
             auto cfg = corollary_of(a);
             auto p = corollary_to_params(cfg);
             Outcome o = of_series(theorem1_eval(p, c.policy));
             char buf[128];
             std::snprintf(buf, sizeof buf, "%.17g", p.B);
             o.extra.emplace_back("B", buf);
             std::snprintf(buf, sizeof buf, "%.17g%+.17gi", p.C.real(), p.C.imag());
             o.extra.emplace_back("C", buf);
             return o;
         },
         "slater_direct"},
        {"slater_direct", plus(kCorollary, {"N"}),
         [](const Args& a, const Ctx&) { return of_value(slater_direct(corollary_of(a))); }},
        {"corollary1_legendre", kCorollary,
         [](const Args& a, const Ctx& c) {
             auto cfg = corollary_of(a);
             if (cfg.variant != Corollary::C1) throw UsageError("corollary1_legendre requires variant = C1");
             return of_series(corollary1_legendre_eval(cfg, c.policy));
         },
         "slater_direct"},
        {"two_range_mos", {"eta", "x1", "x2", "cos_theta", "N"},
         [](const Args& a, const Ctx&) {
             auto r = two_range_mos(a.num("eta"), a.num("x1"), a.num("x2"), a.num("cos_theta"), a.integer("N", 200));
             SeriesEvaluation e;
             KahanSum s;
             for (std::size_t i = 0; i < r.terms.size(); ++i) {
                 s.add(r.terms[i]);
                 e.terms.push_back(r.terms[i]);
                 e.partial_sums.push_back(s.value());
                 e.outer.push_back(static_cast<int>(i));
                 e.inner.push_back(-1);
             }
             e.value = r.value;
             e.converged = true;
             e.terms_used = static_cast<int>(r.terms.size());
             Outcome o = of_series(e);
             o.has_status = false;
             if (r.boundary) o.extra.emplace_back("warning", "x1 = x2 is on the boundary of the two-range domain");
             return o;
         },
         "slater_direct"},
        // amplitudes
        {"s1_coulomb_closed", {"eta1", "x2"},
         [](const Args& a, const Ctx&) { return of_value(s1_coulomb_closed(a.num("eta1"), a.num("x2"))); }},
        {"s1_two_slater_closed", kPair,
         [](const Args& a, const Ctx&) { return of_value(s1_two_slater_closed(pair_of(a))); }},
        {"s1_equal_eta_closed", {"eta2", "x2"},
         [](const Args& a, const Ctx&) { return of_value(s1_equal_eta_closed(a.num("eta2"), a.num("x2"))); }},
        {"s1_tau_oracle", kPair,
         [](const Args& a, const Ctx& c) { return of_quad(s1_tau_oracle(pair_of(a), c.quad_tol)); }},
        {"s1_spatial_oracle", kPair,
         [](const Args& a, const Ctx& c) { return of_quad(s1_spatial_oracle(pair_of(a), std::max(c.quad_tol, 1e-10))); },
         "s1_two_slater_closed"},
        {"s1_series_n_term", plus({"n"}, kPair),
         [](const Args& a, const Ctx& c) {
             return of_value(s1_series_n_term(a.integer("n", 0), pair_of(a), std::min(c.quad_tol, 1e-11)));
         },
         "s1_general_term_gamma"},
        {"s1_n0_erf_closed", kPair, [](const Args& a, const Ctx&) { return of_value(s1_n0_erf_closed(pair_of(a))); },
         "s1_series_n_term"},
        {"s1_general_term_gamma", plus({"n"}, kPair),
         [](const Args& a, const Ctx&) { return of_value(s1_general_term_gamma(a.integer("n", 0), pair_of(a))); },
         "s1_series_n_term"},
        {"s1_general_term_gamma_raw", plus({"n"}, kPair),
         [](const Args& a, const Ctx&) { return of_value(s1_general_term_gamma_raw(a.integer("n", 0), pair_of(a))); },
         "s1_series_n_term"},
        {"cheshire_series", {"eta1", "x2", "k", "k_dot_x2"},
         [](const Args& a, const Ctx& c) {
             auto p = pair_of(a, false);
             return of_series(cheshire_series(p.eta1, p.x2, p.k, p.k_dot_x2, c.policy));
         },
         "cheshire_oracle"},
        {"cheshire_oracle", {"eta1", "x2", "k", "k_dot_x2"},
         [](const Args& a, const Ctx& c) { return of_quad(s1_tau_oracle(pair_of(a, false), c.quad_tol)); }},
        {"theorem2_angular", {"eta2", "x1", "x2"},
         [](const Args& a, const Ctx&) { return of_value(theorem2_angular(a.num("eta2"), a.num("x1"), a.num("x2"))); },
         "theorem2_oracle"},
        {"theorem2_oracle", {"eta2", "x1", "x2"},
         [](const Args& a, const Ctx& c) {
             return of_quad(theorem2_oracle(a.num("eta2"), a.num("x1"), a.num("x2"), std::min(c.quad_tol, 1e-12)));
         }},
        {"theorem3", plus({"n_max", "k_max"}, kPair),
         [](const Args& a, const Ctx& c) { return of_series(theorem3_series(pair_of(a), bounds_of(a, 8, 9), c.policy)); },
         "s1_two_slater_closed"},
        {"theorem4", {"eta2", "x2", "n_max"},
         [](const Args& a, const Ctx& c) {
             return of_series(theorem4_series(a.num("eta2"), a.num("x2"), bounds_of(a, 6, 1), c.policy));
         },
         "s1_equal_eta_closed"},
        {"corollary6_n0_closed", {"eta1", "eta2"},
         [](const Args& a, const Ctx&) { return of_value(corollary6_n0_closed(a.num("eta1"), a.num("eta2"))); }},
        // ellipsoidal
        {"t_abc_oracle", {"R"},
         [](const Args& a, const Ctx& c) { return of_quad(t_abc_oracle(a.num("R"), std::max(c.quad_tol, 1e-10))); }},
        {"t_abc_exact", {"R"}, [](const Args& a, const Ctx&) { return of_value(t_abc_exact(a.num("R"))); },
         "t_abc_oracle"},
        {"t_abc_series", {"R", "n_terms"},
         [](const Args& a, const Ctx& c) {
             return of_series(t_abc_series(a.num("R"), a.integer("n_terms", 6), c.policy));
         },
         "t_abc_exact"},
        {"stall_detector", {"R", "n_terms", "window"},
         [](const Args& a, const Ctx& c) {
             auto e = t_abc_series(a.num("R"), a.integer("n_terms", 40), c.policy);
             auto st = stall_detector(e, a.integer("window", kStallWindow));
             Outcome o = of_value(st.magnitude);
             o.extra.emplace_back("stalled", st.stalled ? "true" : "false");
             o.extra.emplace_back("stall_index", std::to_string(st.index));
             return o;
         }},
    };
    return t;
}

const Target& find_target(const std::string& name)
{
    for (const auto& t : registry())
        if (t.name == name) return t;
    throw UsageError("unknown target '" + name + "'");
}

struct Options {
    std::string scenario_file;
    std::vector<std::string> params;
    std::string target;
    std::string oracle;
    std::string format;
    std::string output;
    std::string filter;
    std::optional<double> tol;
    int digits = 9;
    bool digits_set = false;
    bool allow_k_gt_1 = false;
};

Scenario merged_scenario(const Options& o)
{
    Scenario s;
    if (!o.scenario_file.empty()) s = load_scenario(o.scenario_file);
    for (const auto& p : o.params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + p + "'");
        std::string k = trim(p.substr(0, eq));
        if (k.empty()) throw UsageError("--param with empty key");
        s[k] = trim(p.substr(eq + 1));
    }
    if (!o.target.empty()) s["target"] = o.target;
    if (!o.oracle.empty()) s["oracle"] = o.oracle;
    return s;
}

Ctx make_ctx(const Args& a, const Options& o, bool tol_is_quadrature = true)
{
    Ctx c;
    c.policy = policy_from_env();
    c.policy.rel_tol = a.num("rel_tol", c.policy.rel_tol);
    c.policy.abs_tol = a.num("abs_tol", c.policy.abs_tol);
    c.policy.max_terms = a.integer("max_terms", c.policy.max_terms);
    c.policy.tail_window = a.integer("tail_window", c.policy.tail_window);
    c.policy.allow_k_gt_1 = o.allow_k_gt_1 || a.flag("allow_k_gt_1");
    c.policy.validate();
    if (tol_is_quadrature) {
        if (o.tol) c.quad_tol = *o.tol;
        else if (a.has("tol")) c.quad_tol = a.num("tol");
    }
    if (!(c.quad_tol > 0.0)) throw UsageError("tol must be positive");
    return c;
}

void check_keys(const Scenario& s, const std::vector<const Target*>& targets)
{
    std::set<std::string> ok(kControlKeys.begin(), kControlKeys.end());
    for (auto* t : targets) ok.insert(t->params.begin(), t->params.end());
    for (const auto& [k, v] : s)
        if (!ok.count(k)) {
            std::string allowed;
            for (auto* t : targets)
                for (const auto& p : t->params) allowed += (allowed.empty() ? "" : ", ") + p;
            throw UsageError("unknown key '" + k + "' for target '" + targets.front()->name + "' (accepted: " +
                             allowed + ")");
        }
}

std::string fmt(double x, int digits)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string fmt_c(cplx z, int digits)
{
    std::string im = fmt(z.imag(), digits);
    if (im[0] != '-') im = "+" + im;
    return fmt(z.real(), digits) + im + "i";
}

nlohmann::ordered_json jnum(double x, int digits)
{
    if (!std::isfinite(x)) return nullptr;
    return std::stod(fmt(x, digits));
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string format_of(const Options& o, const Args& a, const std::string& def)
{
    std::string f = !o.format.empty() ? o.format : a.str("format", def);
    if (f != "text" && f != "csv" && f != "json") throw UsageError("format must be csv, json or text");
    return f;
}

int digits_of(const Options& o, const Args& a)
{
    int d = o.digits_set ? o.digits : a.integer("digits", o.digits);
    if (d < 1 || d > 17) throw UsageError("digits must be in 1..17");
    return d;
}

struct Output {
    std::ostream& stream;
    std::ofstream file;
    explicit Output(std::ostream& out) : stream(out) {}
};

int cmd_eval(const Options& o, std::ostream& out)
{
    Scenario s = merged_scenario(o);
    if (!s.count("target")) throw UsageError("no target given (scenario key 'target' or --target)");
    const Target& t = find_target(s.at("target"));
    check_keys(s, {&t});
    Args a(s);
    Ctx c = make_ctx(a, o);
    int d = digits_of(o, a);
    std::string f = format_of(o, a, "text");
    Outcome r = t.run(a, c);
    if (f == "json") {
        nlohmann::ordered_json j;
        j["target"] = t.name;
        j["value_re"] = jnum(r.value.real(), d);
        j["value_im"] = jnum(r.value.imag(), d);
        j["terms_used"] = r.terms_used;
        j["converged"] = r.converged;
        if (r.error_estimate >= 0) j["error_estimate"] = jnum(r.error_estimate, 3);
        for (auto& [k, v] : r.extra) j[k] = v;
        if (r.series)
            for (auto& w : r.series->warnings) j["warnings"].push_back(w);
        out << j.dump(2) << "\n";
    } else if (f == "csv") {
        out << "target,value_re,value_im,terms_used,converged\n";
        out << csv_field(t.name) << "," << fmt(r.value.real(), d) << "," << fmt(r.value.imag(), d) << ","
            << r.terms_used << "," << (r.converged ? "true" : "false") << "\n";
    } else {
        out << "target     " << t.name << "\n";
        out << "value      " << fmt_c(r.value, d) << "\n";
        out << "terms_used " << r.terms_used << "\n";
        out << "converged  " << (r.converged ? "true" : "false") << "\n";
        if (r.error_estimate >= 0) out << "error_est  " << fmt(r.error_estimate, 3) << "\n";
        for (auto& [k, v] : r.extra) out << k << " " << v << "\n";
        if (r.series)
            for (auto& w : r.series->warnings) out << "warning    " << w << "\n";
    }
    return r.has_status && !r.converged ? 2 : 0;
}

const Target& oracle_for(const Target& t, const Scenario& s)
{
    std::string name = s.count("oracle") ? s.at("oracle") : t.oracle;
    if (name.empty()) throw UsageError("target '" + t.name + "' has no registered oracle");
    return find_target(name);
}

int cmd_compare(const Options& o, std::ostream& out)
{
    Scenario s = merged_scenario(o);
    if (!s.count("target")) throw UsageError("no target given (scenario key 'target' or --target)");
    const Target& t = find_target(s.at("target"));
    const Target& orc = oracle_for(t, s);
    check_keys(s, {&t, &orc});
    Args a(s);
    Ctx c = make_ctx(a, o, false);
    int d = digits_of(o, a);
    std::string f = format_of(o, a, "text");
    double tol = o.tol ? *o.tol : a.num("tol", 1e-6);
    Ctx oc = c;
    oc.quad_tol = std::min(c.quad_tol, 1e-10);
    Outcome r = t.run(a, c);
    Outcome q = orc.run(a, oc);
    double abs_err = std::abs(r.value - q.value);
    double rel_err = std::abs(q.value) > 0 ? abs_err / std::abs(q.value) : abs_err;
    bool ok = rel_err <= tol;
    if (f == "json") {
        nlohmann::ordered_json j;
        j["target"] = t.name;
        j["oracle"] = orc.name;
        j["value_re"] = jnum(r.value.real(), d);
        j["value_im"] = jnum(r.value.imag(), d);
        j["oracle_re"] = jnum(q.value.real(), d);
        j["oracle_im"] = jnum(q.value.imag(), d);
        j["abs_err"] = jnum(abs_err, d);
        j["rel_err"] = jnum(rel_err, d);
        j["tol"] = tol;
        j["within_tol"] = ok;
        out << j.dump(2) << "\n";
    } else if (f == "csv") {
        out << "target,oracle,value_re,value_im,oracle_re,oracle_im,abs_err,rel_err,tol,within_tol\n";
        out << t.name << "," << orc.name << "," << fmt(r.value.real(), d) << "," << fmt(r.value.imag(), d) << ","
            << fmt(q.value.real(), d) << "," << fmt(q.value.imag(), d) << "," << fmt(abs_err, d) << ","
            << fmt(rel_err, d) << "," << fmt(tol, d) << "," << (ok ? "true" : "false") << "\n";
    } else {
        out << "target   " << t.name << "  " << fmt_c(r.value, d);
        if (r.has_status) out << "  (" << r.terms_used << " terms, " << (r.converged ? "converged" : "truncated") << ")";
        out << "\n";
        out << "oracle   " << orc.name << "  " << fmt_c(q.value, d) << "\n";
        out << "abs_err  " << fmt(abs_err, d) << "\n";
        out << "rel_err  " << fmt(rel_err, d) << "\n";
        out << "tol      " << fmt(tol, d) << "  " << (ok ? "within" : "OUTSIDE") << "\n";
    }
    return ok ? 0 : 2;
}

int cmd_table(const Options& o, std::ostream& out_default)
{
    Scenario s = merged_scenario(o);
    if (!s.count("target")) throw UsageError("no target given (scenario key 'target' or --target)");
    const Target& t = find_target(s.at("target"));
    const Target* orc = nullptr;
    std::string oname = s.count("oracle") ? s.at("oracle") : t.oracle;
    if (!oname.empty()) orc = &find_target(oname);
    std::vector<const Target*> ts{&t};
    if (orc) ts.push_back(orc);
    check_keys(s, ts);
    Args a(s);
    Ctx c = make_ctx(a, o);
    int d = digits_of(o, a);
    std::string f = format_of(o, a, "csv");
    if (f == "text") f = "csv";
    Outcome r = t.run(a, c);
    std::optional<cplx> ref;
    if (orc) {
        Ctx oc = c;
        oc.quad_tol = std::min(c.quad_tol, 1e-10);
        ref = orc->run(a, oc).value;
    }
    SeriesEvaluation e;
    if (r.series) {
        e = *r.series;
    } else {
        e.terms = {r.value};
        e.partial_sums = {r.value};
        e.outer = {0};
        e.inner = {-1};
    }
    std::ofstream file;
    std::string path = !o.output.empty() ? o.output : a.str("output", "");
    if (!path.empty()) {
        file.open(path, std::ios::binary);
        if (!file) throw IoError("cannot write '" + path + "'");
    }
    std::ostream& out = path.empty() ? out_default : file;
    auto index_of = [&](std::size_t i) {
        std::string s = std::to_string(e.outer[i]);
        if (e.inner[i] >= 0) s += ":" + std::to_string(e.inner[i]);
        return s;
    };
    if (f == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < e.terms.size(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::object();
            if (e.inner[i] >= 0) row["index"] = index_of(i);
            else row["index"] = e.outer[i];
            row["term_re"] = jnum(e.terms[i].real(), d);
            row["term_im"] = jnum(e.terms[i].imag(), d);
            row["partial_re"] = jnum(e.partial_sums[i].real(), d);
            row["partial_im"] = jnum(e.partial_sums[i].imag(), d);
            if (ref) {
                double ae = std::abs(e.partial_sums[i] - *ref);
                row["ref_re"] = jnum(ref->real(), d);
                row["ref_im"] = jnum(ref->imag(), d);
                row["abs_err"] = jnum(ae, d);
                row["rel_err"] = jnum(std::abs(*ref) > 0 ? ae / std::abs(*ref) : ae, d);
            } else {
                row["ref_re"] = row["ref_im"] = row["abs_err"] = row["rel_err"] = nullptr;
            }
            rows.push_back(row);
        }
        out << rows.dump(2) << "\n";
    } else {
        out << "index,term_re,term_im,partial_re,partial_im,ref_re,ref_im,abs_err,rel_err\n";
        for (std::size_t i = 0; i < e.terms.size(); ++i) {
            out << index_of(i) << "," << fmt(e.terms[i].real(), d) << "," << fmt(e.terms[i].imag(), d) << ","
                << fmt(e.partial_sums[i].real(), d) << "," << fmt(e.partial_sums[i].imag(), d) << ",";
            if (ref) {
                double ae = std::abs(e.partial_sums[i] - *ref);
                out << fmt(ref->real(), d) << "," << fmt(ref->imag(), d) << "," << fmt(ae, d) << ","
                    << fmt(std::abs(*ref) > 0 ? ae / std::abs(*ref) : ae, d);
            } else {
                out << ",,,";
            }
            out << "\n";
        }
    }
    if (!out) throw IoError("write failed");
    return 0;
}

int cmd_reproduce(const Options& o, std::ostream& out)
{
    int d = o.digits;
    auto results = run_golden(o.filter, Execution::parallel);
    if (results.empty()) throw UsageError("no checks match filter '" + o.filter + "'");
    std::vector<std::string> failed;
    for (const auto& r : results) {
        std::string tag = r.criterion ? std::string(r.passed ? "PASS" : "FAIL") : std::string(r.passed ? "info pass" : "info fail");
        out << "[" << tag << "] " << r.name << ": " << r.title << "\n";
        for (const auto& m : r.measurements)
            if (!judge(m) || r.criterion == 0) out << "    " << (judge(m) ? "ok   " : "FAIL ") << describe(m, d) << "\n";
        if (!r.error.empty()) out << "    error: " << r.error << "\n";
        if (r.criterion && !r.passed) failed.push_back(r.name);
    }
    if (failed.empty()) {
        out << "all checks passed\n";
        return 0;
    }
    out << "failed:";
    for (auto& n : failed) out << " " << n;
    out << "\n";
    return 3;
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("TARGET", o.target, "target operation (or scenario key target)");
    sub->add_option("--scenario", o.scenario_file, "scenario file (key = value lines)");
    sub->add_option("--param", o.params, "key=value, repeatable")->take_all();
    sub->add_option("--target", o.target, "target operation");
    sub->add_option("--format", o.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--tol", o.tol, "tolerance");
    sub->add_option("--digits", o.digits, "significant digits")->each([&o](const std::string&) { o.digits_set = true; });
    sub->add_flag("--allow-k-gt-1", o.allow_k_gt_1, "accept k > 1");
}

}  // namespace

std::complex<double> parse_complex(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.empty()) throw UsageError("empty complex value");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real("value", s), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real("value", t);
    };
    if (cut == std::string::npos) return {0.0, imag_of(body)};
    return {parse_real("value", body.substr(0, cut)), imag_of(body.substr(cut))};
}

Scenario parse_scenario(std::istream& in)
{
    Scenario s;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("scenario line " + std::to_string(no) + ": expected key = value");
        std::string k = trim(line.substr(0, eq));
        std::string v = trim(line.substr(eq + 1));
        if (k.empty()) throw UsageError("scenario line " + std::to_string(no) + ": empty key");
        if (s.count(k)) throw UsageError("scenario line " + std::to_string(no) + ": duplicate key '" + k + "'");
        s[k] = v;
    }
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw IoError("cannot read scenario '" + path + "'");
    return parse_scenario(f);
}

std::vector<std::string> target_names()
{
    std::vector<std::string> out;
    for (const auto& t : registry()) out.push_back(t.name);
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"One-range addition theorems for Slater orbitals", "slater-addition"};
    app.require_subcommand(1);
    Options o;
    auto* eval = app.add_subcommand("eval", "evaluate a target");
    auto* compare = app.add_subcommand("compare", "compare a target against its oracle");
    auto* table = app.add_subcommand("table", "per-term convergence table");
    auto* repro = app.add_subcommand("reproduce", "run the golden checks");
    for (auto* s : {eval, compare, table}) add_common(s, o);
    compare->add_option("--oracle", o.oracle, "oracle target");
    table->add_option("--oracle", o.oracle, "reference target");
    table->add_option("--output", o.output, "write to file instead of stdout");
    repro->add_option("--filter", o.filter, "run checks whose name contains this");
    repro->add_option("--digits", o.digits, "significant digits");
    repro->add_option("--format", o.format, "ignored")->check(CLI::IsMember({"csv", "json", "text"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }
    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (compare->parsed()) return cmd_compare(o, out);
        if (table->parsed()) return cmd_table(o, out);
        if (repro->parsed()) return cmd_reproduce(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace slater
