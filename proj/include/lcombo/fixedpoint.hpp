#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lcombo/combo.hpp"
#include "lcombo/common.hpp"
#include "lcombo/lfunction.hpp"
#include "lcombo/primes.hpp"

namespace lcombo {

// Window constants of the prime partition.
inline double mu1_window_lo() { return 1.0 / 3.0 - 1.0 / (10.0 * std::sqrt(3.0)); }
inline double mu2_window_lo() { return 1.0 / 3.0 - 1.0 / (10.0 * std::sqrt(5.0)); }
inline double mu_window_hi() { return 1.0 / 3.0; }

struct partition_error : std::runtime_error {
    std::uint64_t offending_prime;
    partition_error(const std::string& msg, std::uint64_t p)
        : std::runtime_error(msg), offending_prime(p) {}
};

struct PartitionThresholds {
    std::uint64_t p1 = 0, p2 = 0;
    double mu0 = 0.0, mu1 = 0.0, mu2 = 0.0;
    double total_sum = 0.0;  // sum_{p<=cutoff} |a(p)| p^{-sigma}
    double sigma = 0.0;
    std::uint64_t prime_cutoff = 0;
};

// Smallest p1 whose normalized prefix lands in [1/3 - 1/(10 sqrt 3), 1/3),
// then smallest p2 for the second window. A single term can jump a window
// (large sigma, few effective primes); that raises partition_error naming it.
inline PartitionThresholds compute_partition(const LFunctionSpec& spec, double sigma,
                                             std::uint64_t prime_cutoff,
                                             const PrimeTable* primes = nullptr) {
    if (sigma <= 1.0) throw domain_error("compute_partition: sigma must exceed 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    std::vector<std::pair<std::uint64_t, double>> terms;
    double total = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        double w = std::abs(spec.log_coeff(p, 1)) * std::pow(double(p), -sigma);
        if (w == 0.0) continue;  // a(p) = 0 contributes nothing to any block
        terms.emplace_back(p, w);
        total += w;
    }
    if (terms.empty()) throw partition_error("compute_partition: no nonzero prime terms", 0);

    PartitionThresholds th;
    th.sigma = sigma;
    th.prime_cutoff = prime_cutoff;
    th.total_sum = total;

    double acc = 0.0;
    std::size_t i = 0;
    for (; i < terms.size(); ++i) {
        acc += terms[i].second;
        double ratio = acc / total;
        if (ratio >= mu_window_hi())
            throw partition_error("compute_partition: prefix jumped the first window at p = " +
                                      std::to_string(terms[i].first),
                                  terms[i].first);
        if (ratio >= mu1_window_lo()) {
            th.p1 = terms[i].first;
            th.mu1 = ratio;
            break;
        }
    }
    if (th.p1 == 0)
        throw partition_error("compute_partition: cutoff exhausted before the first window",
                              terms.back().first);
    double acc2 = 0.0;
    for (++i; i < terms.size(); ++i) {
        acc2 += terms[i].second;
        double ratio = acc2 / total;
        if (ratio >= mu_window_hi())
            throw partition_error("compute_partition: prefix jumped the second window at p = " +
                                      std::to_string(terms[i].first),
                                  terms[i].first);
        if (ratio >= mu2_window_lo()) {
            th.p2 = terms[i].first;
            th.mu2 = ratio;
            break;
        }
    }
    if (th.p2 == 0)
        throw partition_error("compute_partition: cutoff exhausted before the second window",
                              terms.back().first);
    th.mu0 = 1.0 - th.mu1 - th.mu2;
    if (!(th.mu0 > 1.0 / 3.0 &&
          th.mu0 <= 1.0 / 3.0 + 1.0 / (10.0 * std::sqrt(3.0)) + 1.0 / (10.0 * std::sqrt(5.0))))
        throw invariant_violation("compute_partition: mu0 outside its window");
    return th;
}

inline cplx G_map(double mu1, double mu2, double theta1, double theta2) {
    return mu1 * std::polar(1.0, theta1) + mu2 * std::polar(1.0, -theta2);
}

// Image of the boundary of (0, pi/2)^2 under G must wind once around every
// sampled point of the disc boundary |w - mu0| = 1/10; also enforces the two
// displayed inequalities that make G's image cover that disc.
inline bool G_coverage_check(double mu1, double mu2, double mu0, int boundary_samples = 512,
                             int disc_samples = 32) {
    if (!(mu1 + mu2 - mu0 > 0.1))
        throw invariant_violation("G_coverage_check: mu1+mu2-mu0 <= 1/10");
    if (!(mu0 - std::abs(mu2 - mu1) > 0.1))
        throw invariant_violation("G_coverage_check: mu0-|mu2-mu1| <= 1/10");
    std::vector<cplx> path;
    path.reserve(4 * boundary_samples);
    for (int i = 0; i < boundary_samples; ++i) {
        double t = (pi / 2.0) * i / boundary_samples;
        path.push_back(G_map(mu1, mu2, t, 0.0));
    }
    for (int i = 0; i < boundary_samples; ++i) {
        double t = (pi / 2.0) * i / boundary_samples;
        path.push_back(G_map(mu1, mu2, pi / 2.0, t));
    }
    for (int i = 0; i < boundary_samples; ++i) {
        double t = (pi / 2.0) * (1.0 - double(i) / boundary_samples);
        path.push_back(G_map(mu1, mu2, t, pi / 2.0));
    }
    for (int i = 0; i < boundary_samples; ++i) {
        double t = (pi / 2.0) * (1.0 - double(i) / boundary_samples);
        path.push_back(G_map(mu1, mu2, 0.0, t));
    }
    for (int j = 0; j < disc_samples; ++j) {
        cplx target = mu0 + 0.1 * std::polar(1.0, 2.0 * pi * j / disc_samples);
        std::vector<cplx> shifted;
        shifted.reserve(path.size());
        for (const cplx& v : path) shifted.push_back(v - target);
        double w = closed_polyline_winding(shifted);
        if (std::llround(w) != 1) return false;
    }
    return true;
}

struct AngleSolution {
    double theta1 = 0.0, theta2 = 0.0;
    double residual = inf;
    int iterations = 0;
};

namespace detail {

inline bool newton_G(double mu1, double mu2, cplx w, double& th1, double& th2, double& res) {
    for (int it = 0; it < 200; ++it) {
        cplx F = G_map(mu1, mu2, th1, th2) - w;
        res = std::abs(F);
        if (res < 1e-12) return true;
        cplx d1 = cplx(0.0, 1.0) * mu1 * std::polar(1.0, th1);
        cplx d2 = cplx(0.0, -1.0) * mu2 * std::polar(1.0, -th2);
        double det = d1.real() * d2.imag() - d1.imag() * d2.real();
        if (std::abs(det) < 1e-15) return false;
        double s1 = (-F.real() * d2.imag() + F.imag() * d2.real()) / det;
        double s2 = (-d1.real() * F.imag() + d1.imag() * F.real()) / det;
        double scale = 1.0;
        double norm = std::hypot(s1, s2);
        if (norm > 0.5) scale = 0.5 / norm;  // damping
        th1 += scale * s1;
        th2 += scale * s2;
        th1 = std::clamp(th1, 1e-9, pi / 2.0 - 1e-9);
        th2 = std::clamp(th2, 1e-9, pi / 2.0 - 1e-9);
    }
    return false;
}

}  // namespace detail

// Solves mu1 e^{i theta1} + mu2 e^{-i theta2} = w by damped Newton with a
// continuation fallback from the square's center.
inline AngleSolution solve_angles(const PartitionThresholds& th, cplx w) {
    if (std::abs(w - th.mu0) > 0.1 + 1e-12)
        throw domain_error("solve_angles: |w - mu0| must be <= 1/10");
    AngleSolution sol;
    if (th.mu2 < 1e-14) {  // single rotor
        if (std::abs(std::abs(w) - th.mu1) > 1e-10)
            throw domain_error("solve_angles: target unreachable with mu2 = 0");
        sol.theta1 = std::arg(w);
        sol.theta2 = pi / 4.0;
        sol.residual = std::abs(G_map(th.mu1, 0.0, sol.theta1, sol.theta2) - w);
        return sol;
    }
    double th1 = pi / 4.0, th2 = pi / 4.0, res = inf;
    if (!detail::newton_G(th.mu1, th.mu2, w, th1, th2, res)) {
        th1 = th2 = pi / 4.0;
        cplx w0 = G_map(th.mu1, th.mu2, th1, th2);
        const int steps = 32;
        bool ok = true;
        for (int k = 1; k <= steps && ok; ++k) {
            cplx wk = w0 + (w - w0) * (double(k) / steps);
            ok = detail::newton_G(th.mu1, th.mu2, wk, th1, th2, res);
        }
        if (!ok || res >= 1e-10)
            throw precision_error("solve_angles: Newton and continuation both failed");
    }
    sol.theta1 = th1;
    sol.theta2 = th2;
    sol.residual = res;
    if (!(th1 > 0.0 && th1 < pi / 2.0 && th2 > 0.0 && th2 < pi / 2.0))
        throw invariant_violation("solve_angles: solution left (0, pi/2)^2");
    return sol;
}

// Piecewise phase family realizing the three aligned blocks:
// arg(a(p) p^{-i t_p}) = theta1 (p <= p1), -theta2 (p1 < p <= p2), pi (p > p2).
struct TwistSolution {
    cplx z{};
    double theta1 = 0.0, theta2 = 0.0;
    std::map<std::uint64_t, double> twists;
    std::uint64_t p1 = 0, p2 = 0;
    double residual = inf;  // filled in by verify_solution
};

inline TwistSolution build_twists(const LFunctionSpec& spec, double sigma,
                                  const PartitionThresholds& th, double theta1, double theta2,
                                  const PrimeTable* primes = nullptr) {
    (void)sigma;
    PrimeTable own;
    if (!primes || primes->limit < th.prime_cutoff) {
        own = sieve_primes(th.prime_cutoff);
        primes = &own;
    }
    TwistSolution sol;
    sol.theta1 = theta1;
    sol.theta2 = theta2;
    sol.p1 = th.p1;
    sol.p2 = th.p2;
    for (std::uint32_t p : primes->primes) {
        if (p > th.prime_cutoff) break;
        cplx ap = spec.log_coeff(p, 1);
        if (ap == cplx(0.0)) continue;  // no term in the system
        double lp = std::log(double(p));
        double target = p <= th.p1 ? theta1 : (p <= th.p2 ? -theta2 : pi);
        sol.twists[p] = (std::arg(ap) - target) / lp;
    }
    return sol;
}

struct VerifyOutcome {
    double residual = inf;
    double tail_beyond_cutoff = inf;
    cplx achieved{};
};

// Residual of sum_{p<=P} a(p) p^{-sigma - i t_p} = z, plus the honest bound on
// what primes beyond the cutoff could add.
inline VerifyOutcome verify_solution(const LFunctionSpec& spec, double sigma, cplx z,
                                     const TwistSolution& sol, std::uint64_t prime_cutoff,
                                     const PrimeTable* primes = nullptr) {
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    VerifyOutcome out;
    cplx sum = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        cplx ap = spec.log_coeff(p, 1);
        if (ap == cplx(0.0)) continue;
        auto it = sol.twists.find(p);
        if (it == sol.twists.end()) continue;
        double lp = std::log(double(p));
        sum += ap * std::exp(-sigma * lp) * std::exp(cplx(0.0, -it->second * lp));
    }
    out.achieved = sum;
    out.residual = std::abs(sum - z);
    const double K = spec.growth_k, theta = spec.growth_theta;
    out.tail_beyond_cutoff =
        sigma > 1.0 + theta
            ? K * std::pow(double(prime_cutoff), 1.0 + theta - sigma) / (sigma - 1.0 - theta)
            : inf;
    return out;
}

// t_p(z) family covering |z| <= rho via w = mu0 + z/(10 rho); with
// rho = total_sum/10 this is exactly the continuous system sum_p a(p)
// p^{-sigma-i t_p(z)} = z.
inline std::function<TwistSolution(cplx)> make_twist_family(const LFunctionSpec& spec, double sigma,
                                                            const PartitionThresholds& th,
                                                            double rho) {
    if (!(rho > 0.0)) throw domain_error("make_twist_family: rho must be positive");
    return [spec, sigma, th, rho](cplx z) {
        if (std::abs(z) > rho * (1.0 + 1e-12))
            throw domain_error("twist family: |z| exceeds the covered radius rho");
        cplx w = th.mu0 + z / (10.0 * rho);
        AngleSolution ang = solve_angles(th, w);
        TwistSolution sol = build_twists(spec, sigma, th, ang.theta1, ang.theta2);
        sol.z = z;
        return sol;
    };
}

// K_theta = K sum_p 1/(p^{2(1-theta)} - p^{1-theta}), theta < 1/2.
inline EvalResult K_theta(const LFunctionSpec& spec, std::uint64_t prime_cutoff,
                          const PrimeTable* primes = nullptr) {
    const double K = spec.growth_k, theta = spec.growth_theta;
    if (theta >= 0.5) throw domain_error("K_theta: requires theta < 1/2");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    double s = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        double e1 = std::pow(double(p), 2.0 * (1.0 - theta));
        double e2 = std::pow(double(p), 1.0 - theta);
        s += 1.0 / (e1 - e2);
    }
    const double P = double(prime_cutoff);
    // term <= p^{2theta-2}/(1 - 2^{theta-1}), integral tail over u > P
    double tail = K * std::pow(P, 2.0 * theta - 1.0) / ((1.0 - 2.0 * theta) * (1.0 - std::pow(2.0, theta - 1.0)));
    return {cplx(K * s, 0.0), tail};
}

struct SuffCondReport {
    bool satisfied = false;
    double prime_sum_value = 0.0;
    double required = 0.0;  // 10 * rho
    double margin = 0.0;
};

// Saias–Weingartner sufficient condition sum_p |a(p)| p^{-sigma} >= 10 rho;
// with the paper's rho = B + K_theta + pi this is never satisfiable at desk
// scale (the sum grows like log log of the cutoff), which callers report
// honestly rather than work around.
inline SuffCondReport suff_cond_check(const LFunctionSpec& spec, double sigma, double rho,
                                      std::uint64_t prime_cutoff,
                                      const PrimeTable* primes = nullptr) {
    SuffCondReport rep;
    rep.prime_sum_value = prime_sum(spec, sigma, prime_cutoff, primes).value.real();
    rep.required = 10.0 * rho;
    rep.margin = rep.prime_sum_value - rep.required;
    rep.satisfied = rep.margin >= 0.0;
    return rep;
}

struct BrouwerEval {
    cplx value{};           // log f_twisted - sum_{k>=2} tail + pi i
    double log_f_abs = 0.0; // |log f_twisted|, must stay <= B
    double tail2_abs = 0.0; // |sum_p sum_{k>=2} b(p^k) p^{-k(sigma+i t_p)}|
    double bound_B = 0.0;
    double bound_K_theta = 0.0;
    double disc_radius = 0.0;  // B + K_theta + pi: the self-mapped disc
};

// One evaluation of the Brouwer self-map
//   z -> log(f twisted by t_p(z)) - sum_p sum_{k>=2} b(p^k) p^{-k(sigma+i t_p(z))} + pi i
// for the tail f(s) = L(2s)+...+L(Ns).
inline BrouwerEval brouwer_map_eval(const LFunctionSpec& spec, int N, double sigma, cplx z,
                                    const std::function<TwistSolution(cplx)>& family,
                                    std::uint64_t prime_cutoff,
                                    const PrimeTable* primes = nullptr) {
    if (N < 2) throw domain_error("brouwer_map_eval: N must be >= 2");
    if (sigma <= 1.0) throw domain_error("brouwer_map_eval: sigma must exceed 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    TwistSolution sol = family(z);
    TwistPattern tw;
    tw.t = sol.twists;

    BrouwerEval out;
    cplx f = 0.0;
    for (int k = 2; k <= N; ++k)
        f += std::exp(twisted_log_L_euler(spec, double(k) * sigma, double(k), tw, *primes));
    if (N >= 3) {
        DiscReport disc = lemma_disc_check(spec, N, 1.0);
        if (disc.contained && !(std::abs(f - cplx(double(N - 1))) < double(N - 1)))
            throw invariant_violation("brouwer_map_eval: twisted tail escaped the containment disc");
        out.bound_B = disc.log_bound;
    } else {
        out.bound_B = N2_log_bound(spec, prime_cutoff, primes);
    }
    if (f.real() <= 0.0 && std::abs(f.imag()) < 1e-15)
        throw invariant_violation("brouwer_map_eval: twisted tail hit the branch cut");

    cplx tail2 = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        double lp = std::log(double(p));
        double tp = tw.at(p);
        for (int k = 2; k <= 60; ++k) {
            double mag = spec.growth_k * std::exp(-double(k) * (sigma - spec.growth_theta) * lp);
            if (mag < 1e-19) break;
            tail2 += spec.log_coeff(p, k) * std::exp(-double(k) * sigma * lp) *
                     std::exp(cplx(0.0, -double(k) * tp * lp));
        }
    }
    cplx logf = std::log(f);
    out.value = logf - tail2 + cplx(0.0, pi);
    out.log_f_abs = std::abs(logf);
    out.tail2_abs = std::abs(tail2);
    out.bound_K_theta = K_theta(spec, prime_cutoff, primes).value.real();
    out.disc_radius = out.bound_B + out.bound_K_theta + pi;
    return out;
}

}  // namespace lcombo
