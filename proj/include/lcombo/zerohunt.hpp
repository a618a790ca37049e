#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lcombo/common.hpp"

namespace lcombo {

// Search domain inside the half-plane of absolute convergence.
struct Rectangle {
    double sigma_min = 0.0, sigma_max = 0.0;
    double t_min = 0.0, t_max = 0.0;

    void validate() const {
        if (!(sigma_min > 1.0)) throw domain_error("rectangle: sigma_min must exceed 1");
        if (!(sigma_max > sigma_min) || !(t_max > t_min))
            throw domain_error("rectangle: empty or inverted");
    }
};

using EvalFn = std::function<EvalResult(cplx)>;

inline EvalFn exact_fn(std::function<cplx(cplx)> f) {
    return [f = std::move(f)](cplx s) { return EvalResult{f(s), 0.0}; };
}

// Boundary passes too close to a zero relative to the series tail; winding
// refused rather than certified.
struct boundary_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindingOptions {
    int max_depth = 48;
    double abs_threshold = 1e-12;  // floor for closed forms with zero tail
    double tail_factor = 10.0;     // refuse when |F| < tail_factor * tail
};

namespace detail {

inline cplx winding_checked_eval(const EvalFn& F, cplx z, const WindingOptions& opt) {
    EvalResult r = F(z);
    double threshold = std::max(opt.abs_threshold, opt.tail_factor * r.tail_bound);
    if (std::abs(r.value) < threshold)
        throw boundary_error("winding: |F| below threshold on the boundary near s = (" +
                             std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")");
    return r.value;
}

// Continuous-argument increment along a segment; bisect until consecutive
// jumps stay below pi/2 so no winding can hide between samples.
inline double winding_arc(const EvalFn& F, cplx z0, cplx f0, cplx z1, cplx f1, int depth,
                          const WindingOptions& opt) {
    double d = std::arg(f1 / f0);
    if (std::abs(d) < pi / 2.0) return d;
    if (depth <= 0) throw precision_error("winding: refinement depth exceeded");
    cplx zm = 0.5 * (z0 + z1);
    cplx fm = winding_checked_eval(F, zm, opt);
    return winding_arc(F, z0, f0, zm, fm, depth - 1, opt) +
           winding_arc(F, zm, fm, z1, f1, depth - 1, opt);
}

}  // namespace detail

// Zeros-minus-poles count inside rect by the argument principle, boundary
// traversed counterclockwise.
inline int winding_count(const EvalFn& F, const Rectangle& rect, int initial_steps = 32,
                         const WindingOptions& opt = {}) {
    rect.validate();
    if (initial_steps < 1) throw domain_error("winding: initial_steps must be >= 1");
    const cplx corners[4] = {{rect.sigma_min, rect.t_min},
                             {rect.sigma_max, rect.t_min},
                             {rect.sigma_max, rect.t_max},
                             {rect.sigma_min, rect.t_max}};
    double total = 0.0;
    cplx z_prev = corners[0];
    cplx f_prev = detail::winding_checked_eval(F, z_prev, opt);
    for (int e = 0; e < 4; ++e) {
        cplx a = corners[e], b = corners[(e + 1) % 4];
        for (int i = 1; i <= initial_steps; ++i) {
            cplx z = a + (b - a) * (double(i) / initial_steps);
            cplx f = detail::winding_checked_eval(F, z, opt);
            total += detail::winding_arc(F, z_prev, f_prev, z, f, opt.max_depth, opt);
            z_prev = z;
            f_prev = f;
        }
    }
    double turns = total / (2.0 * pi);
    int w = static_cast<int>(std::llround(turns));
    if (std::abs(turns - double(w)) > 0.1)
        throw invariant_violation("winding: boundary argument sum is not an integer multiple of 2pi");
    return w;
}

struct Candidate {
    cplx s;
    double residual;
};

// Grid points whose |F| is <= all existing neighbors and below the candidate
// threshold, sorted by residual.
inline std::vector<Candidate> grid_scan(const EvalFn& F, const Rectangle& rect, int grid_n,
                                        double candidate_threshold = 0.25) {
    rect.validate();
    if (grid_n < 2) throw domain_error("grid_scan: need at least 2 points per axis");
    std::vector<double> mag(static_cast<std::size_t>(grid_n) * grid_n);
    auto at = [&](int i, int j) -> double& { return mag[std::size_t(j) * grid_n + i]; };
    auto point = [&](int i, int j) {
        return cplx(rect.sigma_min + (rect.sigma_max - rect.sigma_min) * i / (grid_n - 1),
                    rect.t_min + (rect.t_max - rect.t_min) * j / (grid_n - 1));
    };
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i) at(i, j) = std::abs(F(point(i, j)).value);

    std::vector<Candidate> out;
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i) {
            double v = at(i, j);
            if (v >= candidate_threshold) continue;
            bool minimal = true;
            for (int dj = -1; dj <= 1 && minimal; ++dj)
                for (int di = -1; di <= 1 && minimal; ++di) {
                    if (!di && !dj) continue;
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= grid_n || jj >= grid_n) continue;
                    if (at(ii, jj) < v) minimal = false;
                }
            if (minimal) out.push_back({point(i, j), v});
        }
    std::sort(out.begin(), out.end(),
              [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
    return out;
}

struct ZeroReport {
    cplx location{};
    double residual = inf;
    int winding = 0;
    bool certified = false;
    std::string flag;  // empty on clean certification
};

// Newton polishing with a finite-difference derivative fallback, then
// certification by a winding count on a small box around the result.
inline ZeroReport newton_polish(const EvalFn& F, std::optional<EvalFn> Fprime, cplx s0,
                                double tol = 1e-10, int max_iter = 60) {
    if (s0.real() <= 1.0) throw domain_error("newton_polish: start must lie in sigma > 1");
    auto deriv = [&](cplx s) -> cplx {
        if (Fprime) return (*Fprime)(s).value;
        double h = 1e-6 * std::max(1.0, std::abs(s));
        return (F(s + h).value - F(s - h).value) / (2.0 * h);
    };
    ZeroReport rep;
    cplx s = s0;
    double last_step = std::abs(s0) * 1e-3 + 1e-6;
    bool perturbed = false;
    for (int it = 0; it < max_iter; ++it) {
        EvalResult f = F(s);
        rep.location = s;
        rep.residual = std::abs(f.value);
        if (rep.residual < tol) {
            double side = std::max({4.0 * last_step, 1e-9, std::abs(s) * 1e-12});
            side = std::min(side, 0.5 * (s.real() - 1.0));
            Rectangle box{s.real() - side / 2, s.real() + side / 2, s.imag() - side / 2,
                          s.imag() + side / 2};
            try {
                rep.winding = winding_count(F, box, 8);
                rep.certified = rep.winding >= 1;
                if (!rep.certified) rep.flag = "no-winding";
            } catch (const std::exception& e) {
                rep.certified = false;
                rep.flag = std::string("certification-refused: ") + e.what();
            }
            return rep;
        }
        cplx fp = deriv(s);
        if (std::abs(fp) < 1e-14 * std::max(1.0, std::abs(f.value))) {
            if (!perturbed) {
                perturbed = true;
                s += cplx(1e-3, 1e-3);
                continue;
            }
            rep.flag = "stationary-derivative";
            return rep;
        }
        cplx step = -f.value / fp;
        s += step;
        last_step = std::abs(step);
        if (s.real() <= 1.0) {
            rep.flag = "diverged-left-of-sigma-1";
            rep.location = s;
            return rep;
        }
    }
    rep.flag = "max-iterations";
    return rep;
}

}  // namespace lcombo
