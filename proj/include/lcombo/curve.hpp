#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lcombo/common.hpp"
#include "lcombo/primes.hpp"

namespace lcombo {

// g(z) = log((z^3 - z)/(z^3 - 1)); the curves below are images of circles
// |z| = r, r > 1, where the fraction has neither zeros nor poles.

inline cplx g_fraction(double r, double theta) {
    cplx z = std::polar(r, theta);
    cplx z3 = z * z * z;
    return (z3 - z) / (z3 - 1.0);
}

inline cplx g_point(double r, double theta) {
    if (r <= 1.0) throw domain_error("g: r must exceed 1");
    return std::log(g_fraction(r, theta));
}

// d(u+iv)/dtheta = i g'(z) z.
inline cplx g_theta_derivative(double r, double theta) {
    if (r <= 1.0) throw domain_error("g: r must exceed 1");
    cplx z = std::polar(r, theta);
    cplx z2 = z * z, z3 = z2 * z;
    cplx gp = (3.0 * z2 - 1.0) / (z3 - z) - 3.0 * z2 / (z3 - 1.0);
    return cplx(0.0, 1.0) * gp * z;
}

// dv/du along the curve; has a pole at the vertical tangent theta = 0.
inline double dvdu_exact(double r, double theta) {
    cplx w = g_theta_derivative(r, theta);
    return w.imag() / w.real();
}

// Opening half-angle of the convex sub-arc.
inline double convex_theta_limit(double r) {
    if (r <= 1.0) throw domain_error("convex_theta_limit: r must exceed 1");
    return std::acos(-1.0 / (2.0 * r));
}

struct ArcSample {
    double theta, u, v;
};

// Image of the arc z = r e^{i theta} with the argument unwrapped along theta
// (the curve is continuous; the principal branch would tear it).
struct CurveArc {
    double r = 0.0;
    double theta_min = 0.0, theta_max = 0.0;
    std::vector<ArcSample> samples;
};

inline CurveArc g_eval_arc(double r, double theta_min, double theta_max, int n_samples) {
    if (r <= 1.0) throw domain_error("g_eval_arc: r must exceed 1 (z^3 = 1 and z^3 = z touch |z| <= 1)");
    if (n_samples < 2) throw domain_error("g_eval_arc: need at least 2 samples");
    if (!(theta_max > theta_min)) throw domain_error("g_eval_arc: empty theta range");
    CurveArc arc;
    arc.r = r;
    arc.theta_min = theta_min;
    arc.theta_max = theta_max;
    arc.samples.reserve(n_samples);
    cplx w_prev = g_fraction(r, theta_min);
    double v = std::arg(w_prev);
    for (int i = 0; i < n_samples; ++i) {
        double th = theta_min + (theta_max - theta_min) * i / double(n_samples - 1);
        cplx w = g_fraction(r, th);
        v += std::arg(w / w_prev);
        w_prev = w;
        arc.samples.push_back({th, std::log(std::abs(w)), v});
    }
    return arc;
}

// Full-circle sample table (Figure-1 style), theta in [0, 2pi).
inline std::vector<ArcSample> figure1_samples(double r, int n_samples) {
    if (r <= 1.0) throw domain_error("figure1_samples: r must exceed 1");
    if (n_samples < 8) throw domain_error("figure1_samples: need at least 8 samples");
    std::vector<ArcSample> out;
    out.reserve(n_samples);
    cplx w_prev = g_fraction(r, 0.0);
    double v = std::arg(w_prev);  // 0: the fraction is positive real at theta = 0
    for (int i = 0; i < n_samples; ++i) {
        double th = 2.0 * pi * i / double(n_samples);
        cplx w = g_fraction(r, th);
        v += std::arg(w / w_prev);
        w_prev = w;
        out.push_back({th, std::log(std::abs(w)), v});
    }
    return out;
}

inline double figure_winding(const std::vector<ArcSample>& samples) {
    std::vector<cplx> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.emplace_back(s.u, s.v);
    return closed_polyline_winding(pts);
}

// The three distinct real-axis values of the curve, with their angles.
struct RealAxisCrossings {
    double u_theta0;     // -log((r^3-1)/(r^3-r))   at theta = 0
    double u_theta_pi;   // -log((r^3+1)/(r^3-r))   at theta = pi
    double u_theta_star; //  log(r^2/(r^2-1))       at theta = +-arccos(-1/(2r))
    double theta_star;
};

inline RealAxisCrossings real_axis_crossings(double r) {
    if (r <= 1.0) throw domain_error("real_axis_crossings: r must exceed 1");
    double r3 = r * r * r;
    return {-std::log((r3 - 1.0) / (r3 - r)), -std::log((r3 + 1.0) / (r3 - r)),
            std::log(r * r / (r * r - 1.0)), convex_theta_limit(r)};
}

// The four angles where the curve meets the imaginary axis:
// theta = +-arccos((-1 +- sqrt(8r^2-3))/(4r)).
struct ImagAxisCrossings {
    double theta_plus;   // from the + square root; lies inside the convex sub-arc
    double theta_minus;  // from the - square root
    double cos_plus, cos_minus;
};

inline ImagAxisCrossings imag_axis_crossings(double r) {
    if (r <= 1.0) throw domain_error("imag_axis_crossings: r must exceed 1");
    double disc = 8.0 * r * r - 3.0;
    if (disc < 0.0) throw domain_error("imag_axis_crossings: discriminant negative");
    double cp = (-1.0 + std::sqrt(disc)) / (4.0 * r);
    double cm = (-1.0 - std::sqrt(disc)) / (4.0 * r);
    if (cp > 1.0 || cm < -1.0)
        throw domain_error("imag_axis_crossings: cosine out of range");
    return {std::acos(cp), std::acos(cm), cp, cm};
}

// ---- paper's printed displays, kept verbatim for cross-checking ----

inline double printed_ratio_display(double r, double theta) {
    double num = 2 * std::pow(r, 4) * std::cos(2 * theta) +
                 std::pow(r, 3) * (std::cos(3 * theta) + 4 * std::cos(theta)) +
                 2 * r * r * (2 + std::cos(2 * theta)) + 4 * r * std::cos(theta) + 1;
    double den = 2 * std::pow(r, 4) * std::sin(2 * theta) +
                 std::pow(r, 3) * (std::sin(3 * theta) + 4 * std::sin(theta)) +
                 2 * r * r * std::sin(2 * theta);
    return -num / den;
}

inline double printed_derivative_display(double r, double theta) {
    double num = 2 * r * (8 + 31 * r * r + 17 * std::pow(r, 4)) * std::cos(theta) +
                 4 * (1 + 7 * r * r + 8 * std::pow(r, 4)) * std::cos(2 * theta) +
                 r * ((7 + 16 * r * r) * std::cos(3 * theta) +
                      r * (24 + 35 * r * r + 8 * std::pow(r, 4) + 4 * std::cos(4 * theta)));
    double den = r * r * sqr(std::sin(theta)) *
                 sqr(4 * (r * r + 1) * std::cos(theta) + r * (2 * std::cos(2 * theta) + 5));
    return -num / den;
}

struct PrintedFormulaReport {
    double r = 0.0;
    bool ratio_display_matches = false;          // printed trig v'/u' vs exact ig'(z)z route
    bool ratio_display_matches_negated = false;  // the sign-flipped reading
    double ratio_display_max_diff = 0.0;         // against the better of the two readings
    bool derivative_display_matches = false;     // printed d(v'/u')/dtheta vs exact route
    double p1_value = 0.0;                       // -(8r^6-14r^4-16r^3-39r^2-7r-12)
    bool p1_claim_holds = false;                 // printed claim: < -382
    double p2_value_14r2 = 0.0;                  // as printed (14r^2 term)
    bool p2_claim_holds_14r2 = false;            // printed claim: < -2
    double p2_value_14r4 = 0.0;                  // the 14r^4 reading
    bool p2_claim_holds_14r4 = false;
};

inline PrintedFormulaReport printed_formula_report(double r, int n_samples = 512) {
    PrintedFormulaReport rep;
    rep.r = r;
    double ts = convex_theta_limit(r);
    double diff_plain = 0.0, diff_neg = 0.0, diff_deriv = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double th = -ts + 2.0 * ts * (i + 0.5) / n_samples;
        if (std::abs(th) < 1e-3) continue;  // vertical tangent
        double exact = dvdu_exact(r, th);
        double printed = printed_ratio_display(r, th);
        double scale = std::max(1.0, std::abs(exact));
        diff_plain = std::max(diff_plain, std::abs(printed - exact) / scale);
        diff_neg = std::max(diff_neg, std::abs(-printed - exact) / scale);
        double h = 1e-6;
        double dnum = (dvdu_exact(r, th + h) - dvdu_exact(r, th - h)) / (2 * h);
        diff_deriv = std::max(diff_deriv,
                              std::abs(printed_derivative_display(r, th) - dnum) /
                                  std::max(1.0, std::abs(dnum)));
    }
    rep.ratio_display_matches = diff_plain < 1e-6;
    rep.ratio_display_matches_negated = diff_neg < 1e-6;
    rep.ratio_display_max_diff = std::min(diff_plain, diff_neg);
    rep.derivative_display_matches = diff_deriv < 1e-3;
    double r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r6 = r4 * r2;
    rep.p1_value = -(8 * r6 - 14 * r4 - 16 * r3 - 39 * r2 - 7 * r - 12);
    rep.p1_claim_holds = rep.p1_value < -382.0;
    rep.p2_value_14r2 = -(8 * r6 - 14 * r2 - 16 * r3 - 33 * r2 - 7 * r - 12);
    rep.p2_claim_holds_14r2 = rep.p2_value_14r2 < -2.0;
    rep.p2_value_14r4 = -(8 * r6 - 14 * r4 - 16 * r3 - 33 * r2 - 7 * r - 12);
    rep.p2_claim_holds_14r4 = rep.p2_value_14r4 < -2.0;
    return rep;
}

struct ConvexityReport {
    bool convex = false;
    double min_margin = inf;            // smallest decrease of dv/du between samples
    double max_route_disagreement = 0;  // exact vs finite-difference tangent direction
    PrintedFormulaReport printed;
};

// Certifies that dv/du is strictly decreasing on each branch of the convex
// sub-arc (theta < 0 and theta > 0 split at the vertical tangent), via the
// exact ratio AND finite differences of the sampled arc. When full_circle is
// set, checks convexity of the whole image instead (it fails: double loop).
inline ConvexityReport convexity_check(double r, int n_samples, bool full_circle = false) {
    if (r <= 1.0) throw domain_error("convexity_check: r must exceed 1");
    if (n_samples < 16) throw domain_error("convexity_check: too few samples");
    ConvexityReport rep;
    rep.printed = printed_formula_report(r);
    if (full_circle) {
        auto samples = figure1_samples(r, n_samples);
        int sign = 0;
        rep.convex = true;
        std::size_t n = samples.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto &a = samples[i], &b = samples[(i + 1) % n], &c = samples[(i + 2) % n];
            double cross = (b.u - a.u) * (c.v - b.v) - (b.v - a.v) * (c.u - b.u);
            if (cross == 0.0) continue;
            int s = cross > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) { rep.convex = false; break; }
        }
        rep.min_margin = 0.0;
        return rep;
    }

    const double ts = convex_theta_limit(r);
    auto arc = g_eval_arc(r, -ts, ts, n_samples | 1);  // odd count puts a sample at theta=0
    rep.convex = true;
    for (int branch = 0; branch < 2; ++branch) {
        double prev_exact = inf, prev_fd = inf;
        bool have_prev_fd = false;
        for (std::size_t i = 0; i + 1 < arc.samples.size(); ++i) {
            const auto &s0 = arc.samples[i], &s1 = arc.samples[i + 1];
            double mid = 0.5 * (s0.theta + s1.theta);
            if (branch == 0 && !(s1.theta < 1e-12)) continue;  // theta < 0 branch
            if (branch == 1 && !(s0.theta > -1e-12)) continue; // theta > 0 branch
            if (std::abs(mid) < 1e-9) continue;
            double exact = dvdu_exact(r, mid);
            double du = s1.u - s0.u, dv = s1.v - s0.v;
            if (std::abs(du) > 1e-15) {
                double fd = dv / du;
                // compare tangent directions; slopes blow up at the vertical tangent
                double ang = std::abs(std::atan(fd) - std::atan(exact));
                rep.max_route_disagreement = std::max(rep.max_route_disagreement, ang);
                if (ang > 5e-3)
                    throw invariant_violation("convexity_check: formula mismatch between exact and finite-difference dv/du at theta = " + std::to_string(mid));
                if (have_prev_fd) {
                    if (fd >= prev_fd) rep.convex = false;
                }
                prev_fd = fd;
                have_prev_fd = true;
            }
            if (prev_exact != inf) {
                double margin = prev_exact - exact;
                rep.min_margin = std::min(rep.min_margin, margin);
                if (margin <= 0.0) rep.convex = false;
            }
            prev_exact = exact;
        }
    }
    return rep;
}

// ---- supporting functions and the Bohr–Haviland–Kershner bounds ----

struct SupportFunction {
    std::vector<double> grid;  // directions theta
    std::vector<double> h;     // h(theta) = max Re(e^{-i theta} z) over the set
    double tail = 0.0;         // prime-tail slack where applicable
};

inline SupportFunction support_function(const CurveArc& arc, const std::vector<double>& theta_grid) {
    if (arc.samples.empty()) throw domain_error("support_function: empty arc");
    SupportFunction sf;
    sf.grid = theta_grid;
    sf.h.reserve(theta_grid.size());
    for (double th : theta_grid) {
        double c = std::cos(th), s = std::sin(th);
        double best = -inf;
        for (const auto& smp : arc.samples) best = std::max(best, smp.u * c + smp.v * s);
        sf.h.push_back(best);
    }
    return sf;
}

// C_{p,sigma}: image of the convex sub-arc of |z| = p^sigma.
inline CurveArc convex_prime_arc(std::uint64_t p, double sigma, int n_samples) {
    double r = std::pow(double(p), sigma);
    double ts = convex_theta_limit(r);
    return g_eval_arc(r, -ts, ts, n_samples);
}

// Termwise bound |g| <= r^-2/(1-r^-2) + r^-3/(1-r^-3) on |z| = r, summed over
// p > P via the integral estimate.
inline double prime_tail_bound(double sigma, std::uint64_t prime_cutoff) {
    double P = double(prime_cutoff);
    double a = std::pow(P, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0) / (1.0 - std::pow(P, -2.0 * sigma));
    double b = std::pow(P, 1.0 - 3.0 * sigma) / (3.0 * sigma - 1.0) / (1.0 - std::pow(P, -3.0 * sigma));
    return a + b;
}

namespace detail {
inline int arc_samples_for(std::uint64_t p) {
    if (p < 16) return 2048;
    if (p < 256) return 512;
    return 96;
}
}  // namespace detail

// Haviland: the outer curve of sum_p C_{p,sigma} has support sum_p h_{p,sigma}.
inline SupportFunction outer_support(double sigma, std::uint64_t prime_cutoff,
                                     const std::vector<double>& theta_grid,
                                     const PrimeTable* primes = nullptr) {
    if (sigma < 1.0) throw domain_error("outer_support: sigma must be >= 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    SupportFunction sf;
    sf.grid = theta_grid;
    sf.h.assign(theta_grid.size(), 0.0);
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        auto hp = support_function(convex_prime_arc(p, sigma, detail::arc_samples_for(p)), theta_grid);
        for (std::size_t i = 0; i < sf.h.size(); ++i) sf.h[i] += hp.h[i];
    }
    sf.tail = prime_tail_bound(sigma, prime_cutoff);
    return sf;
}

// Kershner inner-curve bound, reported as sum_{p>=3} h_p(theta+pi) - h_2(theta):
// at theta = pi this is the paper's right endpoint of the guaranteed real
// interval; negative values mean the p=2 curve dominates (an inner hole).
inline SupportFunction inner_support_bound(double sigma, std::uint64_t prime_cutoff,
                                           const std::vector<double>& theta_grid,
                                           const PrimeTable* primes = nullptr) {
    if (sigma < 1.0) throw domain_error("inner_support_bound: sigma must be >= 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    std::vector<double> shifted;
    shifted.reserve(theta_grid.size());
    for (double th : theta_grid) shifted.push_back(th + pi);
    SupportFunction sf;
    sf.grid = theta_grid;
    sf.h.assign(theta_grid.size(), 0.0);
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        auto arc = convex_prime_arc(p, sigma, detail::arc_samples_for(p));
        if (p == 2) {
            auto h2 = support_function(arc, theta_grid);
            for (std::size_t i = 0; i < sf.h.size(); ++i) sf.h[i] -= h2.h[i];
        } else {
            auto hp = support_function(arc, shifted);
            for (std::size_t i = 0; i < sf.h.size(); ++i) sf.h[i] += hp.h[i];
        }
    }
    sf.tail = prime_tail_bound(sigma, prime_cutoff);
    return sf;
}

// Imaginary-reach estimates of the value set A.
struct RegionBounds {
    double sigma = 0.0;
    std::uint64_t prime_cutoff = 0;
    double lower_reach = 0.0;  // sum of Im g at the +sqrt crossings, minus tail
    double upper_reach = 0.0;  // sum of |Im g| at the -sqrt crossings, plus tail
    double lower_sum = 0.0;    // raw sums before the slack
    double upper_sum = 0.0;
    double tail = 0.0;
    double support_lower = 0.0;  // true outer support at pi/2 minus tail (info:
                                 // the crossing sum is only a lower estimate of it)
};

inline RegionBounds region_bounds(double sigma, std::uint64_t prime_cutoff,
                                  const PrimeTable* primes = nullptr) {
    if (sigma < 1.0) throw domain_error("region_bounds: sigma must be >= 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    RegionBounds rb;
    rb.sigma = sigma;
    rb.prime_cutoff = prime_cutoff;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        double r = std::pow(double(p), sigma);
        auto cross = imag_axis_crossings(r);
        rb.lower_sum += g_point(r, cross.theta_plus).imag();
        rb.upper_sum += std::abs(g_point(r, -cross.theta_minus).imag());
        int ns = detail::arc_samples_for(p);
        double c = convex_theta_limit(r);
        double best = -inf;
        for (int i = 0; i < ns; ++i) {
            double th = -c + 2.0 * c * i / double(ns - 1);
            best = std::max(best, g_point(r, th).imag());
        }
        rb.support_lower += best;
    }
    rb.tail = prime_tail_bound(sigma, prime_cutoff);
    rb.lower_reach = rb.lower_sum - rb.tail;
    rb.upper_reach = rb.upper_sum + rb.tail;
    rb.support_lower -= rb.tail;
    if (!(0.0 < rb.lower_reach && rb.lower_reach < rb.upper_reach))
        throw invariant_violation("region_bounds: expected 0 < lowerReach < upperReach");
    return rb;
}

// sigma grid {1} U {1 + 10^-m : m = 1..6} for "sigma sufficiently close to 1".
inline std::vector<double> default_sigma_grid() {
    std::vector<double> grid{1.0};
    for (int m = 6; m >= 1; --m) grid.push_back(1.0 + std::pow(10.0, -m));
    return grid;
}

enum class VerdictStatus { ZerosExist, ZeroFree, Indeterminate };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::ZerosExist: return "ZerosExist";
        case VerdictStatus::ZeroFree: return "ZeroFree";
        default: return "Indeterminate";
    }
}

struct Verdict {
    int k = 0;
    VerdictStatus status = VerdictStatus::Indeterminate;
    double lower_used = 0.0;
    double upper_used = 0.0;
};

// zeta^k(2s)+zeta^k(3s) = 0 iff log(zeta(3s)/zeta(2s)) = (pi/k) i; compare
// pi/k against the reach bounds. The lower bound may use any sigma in the
// sweep; the upper bound is the paper's sigma = 1 exclusion.
inline Verdict verdict_for_k(int k, const std::vector<RegionBounds>& sweep) {
    if (k < 1) throw domain_error("verdict_for_k: k must be >= 1");
    if (sweep.empty()) throw domain_error("verdict_for_k: empty sweep");
    Verdict v;
    v.k = k;
    double lower = -inf;
    const RegionBounds* at_one = nullptr;
    for (const auto& rb : sweep) {
        lower = std::max(lower, rb.lower_reach);
        if (!at_one || rb.sigma < at_one->sigma) at_one = &rb;
    }
    v.lower_used = lower;
    v.upper_used = at_one->upper_reach;
    double target = pi / double(k);
    if (target <= v.lower_used) v.status = VerdictStatus::ZerosExist;
    else if (target > v.upper_used) v.status = VerdictStatus::ZeroFree;
    else v.status = VerdictStatus::Indeterminate;
    return v;
}

}  // namespace lcombo
