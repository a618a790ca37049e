#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lcombo/character.hpp"
#include "lcombo/combo.hpp"
#include "lcombo/common.hpp"
#include "lcombo/curve.hpp"
#include "lcombo/fixedpoint.hpp"
#include "lcombo/lfunction.hpp"
#include "lcombo/zerohunt.hpp"

namespace lcombo::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string module;
    bool pass = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;  // 0 = no stated limit
    std::string detail;
};

struct Thresholds {
    double lower_reach = 0.36;       // paper's "greater than 0.36"
    double upper_reach = 0.61966;    // paper's printed constant
    double upper_reach_tol = 1e-3;
};

struct Options {
    std::string only;  // substring filter on criterion name or module
    Thresholds thresholds;
    std::uint64_t seed = 20260810;
};

namespace detail {

inline double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw invariant_violation("bisect: no sign change in bracket");
    for (int i = 0; i < iters; ++i) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (fa > 0)) { a = m; fa = fm; }
        else { b = m; fb = fm; }
    }
    return 0.5 * (a + b);
}

inline std::string fmt(double x, int prec = 10) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

}  // namespace detail

// 1. Axis crossings for r = 2: closed forms vs bisection on the sampled arc.
inline CriterionResult criterion_axis_crossings() {
    CriterionResult res{1, "axis-crossings", "curve-geometry", true, 0, 1.0, ""};
    const double r = 2.0;
    const double tol = 1e-8;
    auto u_of = [&](double th) { return std::log(std::abs(g_fraction(r, th))); };
    auto v_of = [&](double th) { return std::arg(g_fraction(r, th)); };

    auto rc = real_axis_crossings(r);
    bool ok = true;
    std::ostringstream d;
    ok &= std::abs(rc.u_theta0 - (-std::log(7.0 / 6.0))) < 1e-14;
    ok &= std::abs(rc.u_theta_pi - (-std::log(1.5))) < 1e-14;
    ok &= std::abs(rc.u_theta_star - std::log(4.0 / 3.0)) < 1e-14;
    // theta = 0 crossing is pinned by symmetry; compare the value
    ok &= std::abs(u_of(0.0) - rc.u_theta0) < tol;
    double th_star = detail::bisect(v_of, rc.theta_star - 0.3, rc.theta_star + 0.3);
    ok &= std::abs(th_star - rc.theta_star) < tol;
    ok &= std::abs(u_of(th_star) - rc.u_theta_star) < tol;
    double th_pi = detail::bisect(v_of, pi - 0.3, pi + 0.3);
    ok &= std::abs(th_pi - pi) < tol;
    ok &= std::abs(u_of(th_pi) - rc.u_theta_pi) < tol;

    auto ic = imag_axis_crossings(r);
    ok &= std::abs(ic.cos_plus - (-1.0 + std::sqrt(29.0)) / 8.0) < 1e-14;
    ok &= std::abs(ic.cos_minus - (-1.0 - std::sqrt(29.0)) / 8.0) < 1e-14;
    double th_p = detail::bisect(u_of, 0.7, 1.3);
    double th_m = detail::bisect(u_of, 2.2, 2.8);
    ok &= std::abs(th_p - ic.theta_plus) < tol;
    ok &= std::abs(th_m - ic.theta_minus) < tol;

    d << "u(0)=" << detail::fmt(rc.u_theta0) << " u(pi)=" << detail::fmt(rc.u_theta_pi)
      << " u(theta*)=" << detail::fmt(rc.u_theta_star) << " root-finds agree to 1e-8";
    res.pass = ok;
    res.detail = d.str();
    return res;
}

// 2. Figure 1 reproduction: double loop, mirror symmetry, 3 real-axis values.
inline CriterionResult criterion_figure1() {
    CriterionResult res{2, "figure1", "curve-geometry", true, 0, 1.0, ""};
    const int n = 4096;
    auto samples = figure1_samples(2.0, n);
    double wind = figure_winding(samples);
    bool ok = std::abs(std::abs(wind) - 2.0) < 1e-6;

    double sym = 0.0;
    for (int i = 1; i < n; ++i) {
        sym = std::max(sym, std::abs(samples[i].u - samples[n - i].u));
        sym = std::max(sym, std::abs(samples[i].v + samples[n - i].v));
    }
    ok &= sym < 1e-9;

    // real-axis values: v sign changes plus exact hits
    std::vector<double> crossings;
    for (int i = 0; i < n; ++i) {
        const auto& a = samples[i];
        const auto& b = samples[(i + 1) % n];
        if (a.v == 0.0) crossings.push_back(a.u);
        else if ((a.v > 0) != (b.v > 0) && b.v != 0.0)
            crossings.push_back(a.u + (b.u - a.u) * (-a.v) / (b.v - a.v));
    }
    std::sort(crossings.begin(), crossings.end());
    std::vector<double> distinct;
    for (double u : crossings)
        if (distinct.empty() || std::abs(u - distinct.back()) > 1e-4) distinct.push_back(u);
    ok &= distinct.size() == 3;

    std::ostringstream d;
    d << "winding=" << wind << " mirror-defect=" << detail::fmt(sym, 3)
      << " distinct real-axis values=" << distinct.size();
    res.pass = ok;
    res.detail = d.str();
    return res;
}

// 3. Convexity certification + printed-formula cross-checks (reported, not fatal).
inline CriterionResult criterion_convexity() {
    CriterionResult res{3, "convexity", "curve-geometry", true, 0, 2.0, ""};
    std::ostringstream d;
    bool ok = true;
    for (double r : {2.0, 3.0, 5.0, 10.0}) {
        auto rep = convexity_check(r, 4096);
        ok &= rep.convex && rep.min_margin > 0.0;
        d << "r=" << r << ": margin=" << detail::fmt(rep.min_margin, 3);
        if (!rep.printed.ratio_display_matches)
            d << (rep.printed.ratio_display_matches_negated
                      ? " [printed ratio display matches only with sign flipped]"
                      : " [printed ratio display mismatch]");
        if (!rep.printed.p1_claim_holds)
            d << " [printed bound -P1<-382 fails: " << detail::fmt(rep.printed.p1_value, 4) << "]";
        if (!rep.printed.p2_claim_holds_14r2)
            d << " [printed bound -P2<-2 fails: " << detail::fmt(rep.printed.p2_value_14r2, 4) << "]";
        d << "; ";
    }
    auto full = convexity_check(2.0, 4096, true);
    ok &= !full.convex;
    d << "full circle r=2 convex=" << (full.convex ? "true" : "false");
    res.pass = ok;
    res.detail = d.str();
    return res;
}

// 4. Lower reach at sigma = 1.001, primes <= 1e5 (spec-pinned crossing-sum formula).
inline CriterionResult criterion_lower_reach(const Thresholds& th) {
    CriterionResult res{4, "lower-reach", "curve-geometry", true, 0, 10.0, ""};
    auto rb = region_bounds(1.001, 100000);
    auto rb1 = region_bounds(1.0, 100000);
    res.pass = rb.lower_reach > th.lower_reach;
    std::ostringstream d;
    d << "lowerReach(1.001)=" << detail::fmt(rb.lower_reach) << " vs threshold "
      << detail::fmt(th.lower_reach, 6) << "; lowerReach(1)=" << detail::fmt(rb1.lower_reach)
      << "; true support h_O(pi/2): " << detail::fmt(rb.support_lower) << " at 1.001, "
      << detail::fmt(rb1.support_lower) << " at 1"
      << (res.pass ? ""
                   : " [the crossing-value sum exceeds 0.36 only for sigma <= ~1.0001; the true "
                     "support sum does exceed 0.36 at 1.001]");
    res.detail = d.str();
    return res;
}

// 5. Upper reach at sigma = 1, primes <= 1e5.
inline CriterionResult criterion_upper_reach(const Thresholds& th) {
    CriterionResult res{5, "upper-reach", "curve-geometry", true, 0, 10.0, ""};
    auto rb = region_bounds(1.0, 100000);
    bool near = std::abs(rb.upper_reach - th.upper_reach) <= th.upper_reach_tol;
    bool below = rb.upper_reach < pi / 5.0;
    res.pass = near && below;
    std::ostringstream d;
    d << "upperReach(1)=" << detail::fmt(rb.upper_reach) << " |diff to " << th.upper_reach
      << "|=" << detail::fmt(std::abs(rb.upper_reach - th.upper_reach), 3) << " and < pi/5="
      << detail::fmt(pi / 5.0, 8) << "; paper's printed direction (sum > 0.61966) "
      << (rb.upper_reach > th.upper_reach ? "holds" : "is contradicted (flagged per open question)");
    res.detail = d.str();
    return res;
}

// 6. Verdicts for k = 1..12 over the sigma sweep.
inline CriterionResult criterion_verdicts() {
    CriterionResult res{6, "verdicts", "curve-geometry", true, 0, 10.0, ""};
    std::vector<RegionBounds> sweep;
    for (double s : default_sigma_grid()) sweep.push_back(region_bounds(s, 100000));
    bool ok = true;
    std::ostringstream d;
    for (int k = 1; k <= 12; ++k) {
        Verdict v = verdict_for_k(k, sweep);
        VerdictStatus want = k <= 5 ? VerdictStatus::ZeroFree
                             : k <= 8 ? VerdictStatus::Indeterminate
                                      : VerdictStatus::ZerosExist;
        if (v.status != want) {
            ok = false;
            d << "k=" << k << " got " << to_string(v.status) << " want " << to_string(want) << "; ";
        }
        if (k == 7)
            d << "bounds used: lower=" << detail::fmt(v.lower_used) << " upper="
              << detail::fmt(v.upper_used) << "; ";
    }
    d << (ok ? "k=1..5 ZeroFree, k=6..8 Indeterminate, k=9..12 ZerosExist" : "verdict mismatches");
    res.pass = ok;
    res.detail = d.str();
    return res;
}

// 7. Lemma disc arithmetic in exact rationals for the n^{1/4}-bound variant.
inline CriterionResult criterion_lemma_rationals() {
    CriterionResult res{7, "lemma-rationals", "combo-series", true, 0, 0.1, ""};
    auto variant = with_coeff_bound(zeta_spec(), 1, 1, 1, 4);
    auto d2 = lemma_disc_check(variant, 2);
    auto d3 = lemma_disc_check(variant, 3);
    auto d10 = lemma_disc_check(variant, 10);
    bool ok = d2.exact && d2.radius_rat == rational(4, 3) && !d2.contained;
    ok &= d3.exact && d3.radius_rat == rational(40, 21) && d3.contained;
    ok &= d10.exact && d10.radius_rat == rational(93250876, 28164213) && d10.contained &&
          std::abs(d10.radius - 3.3109704) < 1e-6;
    std::ostringstream d;
    d << "N=2: 4/3 not contained; N=3: 40/21 < 2; N=10: " << detail::fmt(d10.radius, 8) << " < 9";
    res.pass = ok;
    res.detail = d.str();
    return res;
}

// 8. Euler product vs direct summation for zeta and chi mod 5 at 20 random s.
inline CriterionResult criterion_euler_vs_direct(std::uint64_t seed) {
    CriterionResult res{8, "euler-vs-direct", "dirichlet-core", true, 0, 5.0, ""};
    auto chi = character_from_table(5, {{2, cplx(0.0, 1.0)}});
    std::vector<LFunctionSpec> specs{zeta_spec(), character_spec(chi)};
    const std::uint64_t P = 30000;
    const std::uint32_t M = 300000;
    PrimeTable primes = sieve_primes(P);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sig(1.2, 3.0), tee(-20.0, 20.0);
    bool ok = true;
    double worst = 0.0;
    for (const auto& spec : specs) {
        auto coeffs = coefficients_up_to(spec, M);
        auto bound = effective_coeff_bound(spec);
        for (int i = 0; i < 20; ++i) {
            cplx s(sig(rng), tee(rng));
            EvalResult euler = eval_L(spec, s, P, 40, &primes);
            cplx direct = 0.0;
            for (std::uint32_t n = 1; n <= M; ++n)
                if (coeffs[n] != cplx(0.0)) direct += coeffs[n] * std::exp(-s * std::log(double(n)));
            double dtail = bound.A * std::pow(double(M), bound.beta + 1.0 - s.real()) /
                           (s.real() - bound.beta - 1.0);
            double diff = std::abs(euler.value - direct);
            double budget = euler.tail_bound + dtail;
            worst = std::max(worst, diff - budget);
            if (diff > budget) ok = false;
        }
    }
    res.pass = ok;
    res.detail = "worst (diff - tailBudget) = " + detail::fmt(worst, 3);
    return res;
}

// 9. Winding oracle: products of Dirichlet polynomials with closed-form zeros.
inline CriterionResult criterion_winding_oracle(std::uint64_t seed) {
    CriterionResult res{9, "winding-oracle", "zero-hunter", true, 0, 5.0, ""};
    std::mt19937_64 rng(seed ^ 0xABCDEF);
    std::uniform_real_distribution<double> su(1.3, 3.2), tu(-3.0, 3.0);
    std::uniform_int_distribution<int> nf(1, 3), pidx(0, 4);
    const double plist[5] = {2, 3, 5, 7, 11};
    bool ok = true;
    int done = 0, total_zeros = 0;
    while (done < 20) {
        int m = nf(rng);
        std::vector<double> ps, s0r, s0i;
        for (int j = 0; j < m; ++j) {
            ps.push_back(plist[pidx(rng)]);
            s0r.push_back(su(rng));
            s0i.push_back(tu(rng));
        }
        std::uniform_real_distribution<double> rs(1.15, 3.6), rt(-12.0, 12.0);
        double a = rs(rng), b = rs(rng), c = rt(rng), dd = rt(rng);
        Rectangle rect{std::min(a, b), std::max(a, b), std::min(c, dd), std::max(c, dd)};
        if (rect.sigma_max - rect.sigma_min < 0.2 || rect.t_max - rect.t_min < 0.5) continue;

        int expect = 0;
        bool too_close = false;
        for (int j = 0; j < m; ++j) {
            double margin_s = std::min(std::abs(s0r[j] - rect.sigma_min), std::abs(s0r[j] - rect.sigma_max));
            if (margin_s < 0.05) { too_close = true; break; }
            bool sig_inside = s0r[j] > rect.sigma_min && s0r[j] < rect.sigma_max;
            double step = 2.0 * pi / std::log(ps[j]);
            long kmin = std::lround(std::floor((rect.t_min - s0i[j]) / step)) - 2;
            long kmax = std::lround(std::ceil((rect.t_max - s0i[j]) / step)) + 2;
            for (long k = kmin; k <= kmax; ++k) {
                double t = s0i[j] + double(k) * step;
                double margin_t = std::min(std::abs(t - rect.t_min), std::abs(t - rect.t_max));
                if (margin_t < 0.05) { too_close = true; break; }
                if (sig_inside && t > rect.t_min && t < rect.t_max) ++expect;
            }
            if (too_close) break;
        }
        if (too_close) continue;

        EvalFn F = exact_fn([ps, s0r, s0i, m](cplx s) {
            cplx v = 1.0;
            for (int j = 0; j < m; ++j) {
                cplx s0(s0r[j], s0i[j]);
                v *= 1.0 - std::exp((s0 - s) * std::log(ps[j]));
            }
            return v;
        });
        int got = winding_count(F, rect, 48);
        if (got != expect) {
            ok = false;
            res.detail += "rect mismatch: got " + std::to_string(got) + " want " +
                          std::to_string(expect) + "; ";
        }
        total_zeros += expect;
        ++done;
    }
    res.pass = ok;
    res.detail += "20 rectangles, " + std::to_string(total_zeros) + " zeros counted exactly";
    return res;
}

// 10. Fixed-point construction end-to-end at the spec's stated parameters
// (zeta, sigma=1.1, primes <= 1e4, rho = totalSum/10, 16 boundary targets).
inline CriterionResult criterion_fixed_point() {
    CriterionResult res{10, "fixed-point", "fixed-point-construct", true, 0, 10.0, ""};
    auto zeta = zeta_spec();
    std::ostringstream d;
    bool ok = true;
    try {
        PrimeTable primes = sieve_primes(10000);
        auto th = compute_partition(zeta, 1.1, 10000, &primes);
        ok &= G_coverage_check(th.mu1, th.mu2, th.mu0);
        double rho = th.total_sum / 10.0;
        auto family = make_twist_family(zeta, 1.1, th, rho);
        double worst = 0.0;
        for (int j = 0; j < 16; ++j) {
            cplx z = rho * std::polar(1.0, 2.0 * pi * j / 16.0);
            auto sol = family(z);
            auto out = verify_solution(zeta, 1.1, z, sol, 10000, &primes);
            worst = std::max(worst, out.residual);
        }
        ok &= worst < 1e-6;
        d << "p1=" << th.p1 << " p2=" << th.p2 << " mu0=" << detail::fmt(th.mu0, 6)
          << " worst residual=" << detail::fmt(worst, 3);
    } catch (const partition_error& e) {
        ok = false;
        d << "partition infeasible at stated parameters (sigma=1.1, cutoff 1e4): " << e.what()
          << " [sum_p p^-1.1 = 1.8584 makes the p=3 prefix jump the first window for every "
             "cutoff; construction demonstrated instead at sigma=1.01, cutoff 1e5: ";
        // feasible-parameter demonstration, informational only
        PrimeTable primes5 = sieve_primes(100000);
        auto th = compute_partition(zeta_spec(), 1.01, 100000, &primes5);
        bool cov = G_coverage_check(th.mu1, th.mu2, th.mu0);
        double rho = th.total_sum / 10.0;
        auto family = make_twist_family(zeta_spec(), 1.01, th, rho);
        double worst = 0.0;
        for (int j = 0; j < 16; ++j) {
            cplx z = rho * std::polar(1.0, 2.0 * pi * j / 16.0);
            auto sol = family(z);
            worst = std::max(worst, verify_solution(zeta_spec(), 1.01, z, sol, 100000, &primes5).residual);
        }
        d << "p1=" << th.p1 << " p2=" << th.p2 << " coverage=" << (cov ? "ok" : "FAIL")
          << " worst residual=" << detail::fmt(worst, 3) << "]";
    }
    d << " (paper-scale rho = B+K_theta+pi needs prime_sum >= "
      << detail::fmt(10.0 * (N2_log_bound(zeta, 100000) + K_theta(zeta, 100000).value.real() + pi), 4)
      << ", unreachable at desk scale: prime_sum grows like log log cutoff)";
    res.pass = ok;
    res.detail = d.str();
    return res;
}

// 11. K_theta for zeta against the brute-force sum over primes <= 1e6.
inline CriterionResult criterion_k_theta() {
    CriterionResult res{11, "k-theta", "fixed-point-construct", true, 0, 5.0, ""};
    PrimeTable primes = sieve_primes(1000000);
    double brute = 0.0;
    for (std::uint32_t p : primes.primes) brute += 1.0 / (double(p) * (double(p) - 1.0));
    double val = K_theta(zeta_spec(), 1000000, &primes).value.real();
    bool ok = std::abs(val - 0.7731567) < 1e-4 && std::abs(val - brute) < 1e-12;
    res.pass = ok;
    res.detail = "K_theta = " + detail::fmt(val) + ", brute oracle = " + detail::fmt(brute);
    return res;
}

// 12. Zero-search property for zeta(s)+zeta(2s): every certified report must
// survive doubled cutoffs; finding a zero is not required.
inline CriterionResult criterion_zero_search() {
    CriterionResult res{12, "zero-search", "zero-hunter", true, 0, 0.0, ""};
    ComboSpec combo{zeta_spec(), 2};
    PrimeTable primes = sieve_primes(4000);
    auto make_F = [&](std::uint64_t cutoff) {
        return EvalFn([&, cutoff](cplx s) { return eval_F(combo, s, cutoff, 40, &primes); });
    };
    EvalFn F = make_F(2000);
    Rectangle rect{1.05, 1.5, 0.0, 60.0};
    auto candidates = grid_scan(F, rect, 96, 0.5);
    int certified = 0, surviving = 0;
    bool ok = true;
    EvalFn F2 = make_F(4000);
    for (const auto& cand : candidates) {
        auto rep = newton_polish(F, std::nullopt, cand.s, 1e-9);
        if (!rep.certified) continue;
        ++certified;
        double re_res = std::abs(F2(rep.location).value);
        Rectangle box{rep.location.real() - 1e-4, rep.location.real() + 1e-4,
                      rep.location.imag() - 1e-4, rep.location.imag() + 1e-4};
        int w = 0;
        try { w = winding_count(F2, box, 16); } catch (...) { w = -1; }
        if (re_res < 1e-8 && w == 1) ++surviving;
        else ok = false;
    }
    res.pass = ok;
    res.detail = "scanned [1.05,1.5]x[0,60] at 96x96: " + std::to_string(candidates.size()) +
                 " candidates, " + std::to_string(certified) + " certified, " +
                 std::to_string(surviving) +
                 " survive doubled cutoffs (existence is guaranteed by the theory, no location "
                 "is promised at these heights)";
    return res;
}

inline std::vector<CriterionResult> run_acceptance(const Options& opt = {}) {
    std::vector<CriterionResult> out;
    auto want = [&](const char* name, const char* module) {
        if (opt.only.empty()) return true;
        return std::string(name).find(opt.only) != std::string::npos ||
               std::string(module).find(opt.only) != std::string::npos;
    };
    auto timed = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = fn();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
            r.pass = false;
            r.detail += " [runtime " + detail::fmt(r.seconds, 3) + "s over limit]";
        }
        out.push_back(std::move(r));
    };
    if (want("axis-crossings", "curve-geometry")) timed([&] { return criterion_axis_crossings(); });
    if (want("figure1", "curve-geometry")) timed([&] { return criterion_figure1(); });
    if (want("convexity", "curve-geometry")) timed([&] { return criterion_convexity(); });
    if (want("lower-reach", "curve-geometry")) timed([&] { return criterion_lower_reach(opt.thresholds); });
    if (want("upper-reach", "curve-geometry")) timed([&] { return criterion_upper_reach(opt.thresholds); });
    if (want("verdicts", "curve-geometry")) timed([&] { return criterion_verdicts(); });
    if (want("lemma-rationals", "combo-series")) timed([&] { return criterion_lemma_rationals(); });
    if (want("euler-vs-direct", "dirichlet-core")) timed([&] { return criterion_euler_vs_direct(opt.seed); });
    if (want("winding-oracle", "zero-hunter")) timed([&] { return criterion_winding_oracle(opt.seed); });
    if (want("fixed-point", "fixed-point-construct")) timed([&] { return criterion_fixed_point(); });
    if (want("k-theta", "fixed-point-construct")) timed([&] { return criterion_k_theta(); });
    if (want("zero-search", "zero-hunter")) timed([&] { return criterion_zero_search(); });
    return out;
}

}  // namespace lcombo::verify
