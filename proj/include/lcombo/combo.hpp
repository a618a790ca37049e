#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lcombo/common.hpp"
#include "lcombo/lfunction.hpp"
#include "lcombo/primes.hpp"

namespace lcombo {

using rational = boost::multiprecision::cpp_rational;

// F_N(s) = L(s) + L(2s) + ... + L(Ns).
struct ComboSpec {
    LFunctionSpec base;
    int N = 2;
};

inline EvalResult eval_F(const ComboSpec& combo, cplx s, std::uint64_t prime_cutoff,
                         int power_cutoff, const PrimeTable* primes = nullptr) {
    if (combo.N < 2) throw domain_error("eval_F: N must be >= 2");
    if (s.real() <= 1.0) throw domain_error("eval_F: Re(s) must exceed 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    EvalResult total;
    for (int k = 1; k <= combo.N; ++k) {
        EvalResult term = eval_L(combo.base, double(k) * s, prime_cutoff, power_cutoff, primes);
        total.value += term.value;
        total.tail_bound += term.tail_bound;
    }
    return total;
}

// Containment of the tail f(s) = L(2s)+...+L(Ns) in the disc around N-1:
// |L(ks)-1| <= A/(k sigma - 1 - beta), summed over k = 2..N.
struct DiscReport {
    int N = 0;
    double radius = 0.0;
    double center = 0.0;       // N - 1
    bool contained = false;
    double log_bound = inf;    // B(N); finite iff contained
    bool coeff_bound_empirical = false;
    bool exact = false;        // radius computed in exact rational arithmetic
    rational radius_rat = 0;   // valid iff exact
};

// B from the disc geometry: modulus part max(|log(c-r)|, log(c+r)) plus
// argument part arcsin(r/c).
inline double disc_log_bound(double center, double radius) {
    if (!(radius < center)) return inf;
    double mod_part = std::max(std::abs(std::log(center - radius)), std::log(center + radius));
    return mod_part + std::asin(radius / center);
}

inline DiscReport lemma_disc_check(const LFunctionSpec& spec, int N, double sigma = 1.0) {
    if (N < 2) throw domain_error("lemma_disc_check: N must be >= 2 (N=2 reports not-contained; use N2_log_bound)");
    if (sigma < 1.0) throw domain_error("lemma_disc_check: sigma must be >= 1");
    DiscReport rep;
    rep.N = N;
    rep.center = double(N - 1);
    auto bound = effective_coeff_bound(spec);
    rep.coeff_bound_empirical = bound.empirical;
    if (!bound.empirical && sigma == 1.0) {
        const CoeffBound& cb = *spec.coeff_bound;
        rational A(cb.A_num, cb.A_den), beta(cb.beta_num, cb.beta_den);
        rational r = 0;
        for (int k = 2; k <= N; ++k) r += A / (rational(k) - 1 - beta);
        rep.exact = true;
        rep.radius_rat = r;
        rep.radius = r.convert_to<double>();
        rep.contained = r < rational(N - 1);
    } else {
        double r = 0.0;
        for (int k = 2; k <= N; ++k) r += bound.A / (double(k) * sigma - 1.0 - bound.beta);
        rep.radius = r;
        rep.contained = r < rep.center;
    }
    rep.log_bound = rep.contained ? disc_log_bound(rep.center, rep.radius) : inf;
    return rep;
}

// N=2 route: |log(-L(2s))| <= pi + K sum_p 1/(p^{3/2}-1), valid for every
// theta <= 1/2 (the paper's displayed form).
inline double N2_log_bound(const LFunctionSpec& spec, std::uint64_t prime_cutoff,
                           const PrimeTable* primes = nullptr) {
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    double s = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        s += 1.0 / (std::pow(double(p), 1.5) - 1.0);
    }
    const double P = double(prime_cutoff);
    double tail = (2.0 / std::sqrt(P)) / (1.0 - std::pow(P, -1.5));
    return pi + spec.growth_k * (s + tail);
}

// Per-prime phase family {t_p}; unlisted primes are untwisted.
struct TwistPattern {
    std::map<std::uint64_t, double> t;

    double at(std::uint64_t p) const {
        auto it = t.find(p);
        return it == t.end() ? 0.0 : it->second;
    }
};

// One nonzero coefficient of a Dirichlet series, with its factorization
// cached so repeated twists are cheap.
struct TwistedTerm {
    std::uint64_t n;
    cplx c;
    std::vector<PrimePower> fac;
};

inline std::vector<TwistedTerm> materialize_terms(const std::function<cplx(std::uint64_t)>& coeff,
                                                  std::uint32_t n_cutoff) {
    std::vector<TwistedTerm> out;
    for (std::uint64_t n = 1; n <= n_cutoff; ++n) {
        cplx c = coeff(n);
        if (c == cplx(0.0)) continue;
        out.push_back({n, c, factorize(n)});
    }
    return out;
}

inline cplx twisted_sum(const std::vector<TwistedTerm>& terms, double sigma,
                        const TwistPattern& twist) {
    cplx total = 0.0;
    for (const auto& term : terms) {
        double phase = 0.0;
        for (const auto& pp : term.fac) phase += double(pp.k) * twist.at(pp.p) * std::log(double(pp.p));
        total += term.c * std::exp(-sigma * std::log(double(term.n))) *
                 std::exp(cplx(0.0, -phase));
    }
    return total;
}

// sum_n c(n) / (n^sigma prod_{p^nu || n} p^{i nu t_p}), truncated at n_cutoff.
// The tail bound comes from the caller, who knows the coefficient structure
// (dense vs supported on perfect powers etc.); sigma must lie in the series'
// absolute-convergence range for that bound to be meaningful.
inline EvalResult eval_twisted(const std::function<cplx(std::uint64_t)>& coeff, double sigma,
                               const TwistPattern& twist, std::uint32_t n_cutoff,
                               double tail_bound,
                               std::optional<double> required_tol = std::nullopt) {
    if (!(sigma > 0.0) || !std::isfinite(tail_bound))
        throw domain_error("eval_twisted: sigma outside the absolute-convergence range");
    auto terms = materialize_terms(coeff, n_cutoff);
    if (required_tol && tail_bound > *required_tol)
        throw precision_error("eval_twisted: tail exceeds requested tolerance");
    return {twisted_sum(terms, sigma, twist), tail_bound};
}

// Nonzero coefficients of the tail f(s) = L(2s)+...+L(Ns): supported on 1 and
// on perfect powers m^k, k = 2..N.
inline std::vector<TwistedTerm> tail_coefficient_terms(const LFunctionSpec& base, int N,
                                                       std::uint32_t n_cutoff) {
    if (N < 2) throw domain_error("tail_coefficient_terms: N must be >= 2");
    std::uint32_t m_max = static_cast<std::uint32_t>(std::sqrt(double(n_cutoff))) + 1;
    auto a = coefficients_up_to(base, m_max);
    std::map<std::uint64_t, cplx> coeffs;
    coeffs[1] = cplx(double(N - 1), 0.0);
    for (int k = 2; k <= N; ++k) {
        for (std::uint64_t m = 2;; ++m) {
            double nk = std::pow(double(m), double(k));
            if (nk > double(n_cutoff) + 0.5) break;
            std::uint64_t n = 1;
            for (int j = 0; j < k; ++j) n *= m;
            if (n > n_cutoff) break;
            if (m < a.size()) coeffs[n] += a[m];
        }
    }
    std::vector<TwistedTerm> out;
    for (auto& [n, c] : coeffs) {
        if (c == cplx(0.0)) continue;
        out.push_back({n, c, factorize(n)});
    }
    return out;
}

// Tail of the truncated twisted f: sum_k A sum_{m > n_cutoff^{1/k}} m^{beta-k sigma}.
inline double tail_terms_bound(const LFunctionSpec& base, int N, double sigma,
                               std::uint32_t n_cutoff) {
    auto bound = effective_coeff_bound(base);
    double tail = 0.0;
    for (int k = 2; k <= N; ++k) {
        double Mk = std::floor(std::pow(double(n_cutoff), 1.0 / double(k)));
        tail += bound.A * std::pow(Mk, bound.beta + 1.0 - double(k) * sigma) /
                (double(k) * sigma - bound.beta - 1.0);
    }
    return tail;
}

// Twisted tail series evaluated by direct summation over its coefficients.
inline EvalResult eval_tail_twisted(const std::vector<TwistedTerm>& terms,
                                    const LFunctionSpec& base, int N, double sigma,
                                    const TwistPattern& twist, std::uint32_t n_cutoff) {
    if (sigma < 1.0) throw domain_error("eval_tail_twisted: sigma must be >= 1");
    return {twisted_sum(terms, sigma, twist), tail_terms_bound(base, N, sigma, n_cutoff)};
}

// Twisted log L on the Euler side: sum_p sum_j b(p^j) p^{-j sigma_eff}
// e^{-i j phase_mult t_p log p}. With sigma_eff = k s and phase_mult = k this
// is log of the k-th combo term under the twist {t_p}.
inline cplx twisted_log_L_euler(const LFunctionSpec& spec, double sigma_eff, double phase_mult,
                                const TwistPattern& twist, const PrimeTable& primes,
                                int power_cutoff = 60) {
    if (sigma_eff <= 1.0) throw domain_error("twisted_log_L_euler: sigma must exceed 1");
    cplx total = 0.0;
    for (std::uint32_t p : primes.primes) {
        const double lp = std::log(double(p));
        const double tp = twist.at(p);
        for (int j = 1; j <= power_cutoff; ++j) {
            double mag = spec.growth_k * std::exp(-double(j) * (sigma_eff - spec.growth_theta) * lp);
            if (mag < 1e-19) break;
            total += spec.log_coeff(p, j) * std::exp(-double(j) * sigma_eff * lp) *
                     std::exp(cplx(0.0, -double(j) * phase_mult * tp * lp));
        }
    }
    return total;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct TwistSampleReport {
    double max_abs_log = 0.0;
    int trials = 0;
    bool empty = true;
    std::uint64_t seed = 0;
    double log_bound = inf;   // B(N) from the disc geometry
    double eval_tail = 0.0;   // truncation slack of the sampled values
};

// Samples random twist families (t_p uniform in [0, 2pi/log p) for p up to
// twist_prime_cutoff) and records max |log f_twisted|. Requires the lemma
// disc to be contained so the log is well-defined.
inline TwistSampleReport uniform_log_bound_sample(const ComboSpec& combo, double sigma, int trials,
                                                  std::uint64_t seed,
                                                  std::uint64_t twist_prime_cutoff = 100,
                                                  std::uint32_t n_cutoff = 1000000) {
    if (sigma < 1.0) throw domain_error("uniform_log_bound_sample: sigma must be >= 1");
    DiscReport disc = lemma_disc_check(combo.base, combo.N, 1.0);
    if (!disc.contained)
        throw invariant_violation("uniform_log_bound_sample: lemma disc not contained for N=" +
                                  std::to_string(combo.N));
    TwistSampleReport rep;
    rep.seed = seed;
    rep.trials = trials;
    rep.log_bound = disc.log_bound;
    if (trials <= 0) return rep;
    rep.empty = false;

    auto terms = tail_coefficient_terms(combo.base, combo.N, n_cutoff);
    rep.eval_tail = tail_terms_bound(combo.base, combo.N, sigma, n_cutoff);
    PrimeTable primes = sieve_primes(std::max<std::uint64_t>(twist_prime_cutoff, 2));
    const double center = double(combo.N - 1);
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x51ED2701ULL + std::uint64_t(trial))));
        TwistPattern tw;
        for (std::uint32_t p : primes.primes) {
            if (p > twist_prime_cutoff) break;
            std::uniform_real_distribution<double> dist(0.0, 2.0 * pi / std::log(double(p)));
            tw.t[p] = dist(rng);
        }
        cplx f = twisted_sum(terms, sigma, tw);
        if (std::abs(f - center) >= center + rep.eval_tail)
            throw invariant_violation("uniform_log_bound_sample: twisted value escaped the disc");
        rep.max_abs_log = std::max(rep.max_abs_log, std::abs(std::log(f)));
    }
    return rep;
}

}  // namespace lcombo
