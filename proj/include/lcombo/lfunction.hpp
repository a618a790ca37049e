#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcombo/character.hpp"
#include "lcombo/common.hpp"
#include "lcombo/primes.hpp"

namespace lcombo {

// |a(n)| <= A * n^beta for every n >= 2. `exact` marks a proven bound (the
// rational fields are then authoritative and drive exact lemma arithmetic);
// otherwise A was estimated by scanning finitely many coefficients.
struct CoeffBound {
    double A = 1.0;
    double beta = 0.5;
    bool exact = false;
    long long A_num = 1, A_den = 1;
    long long beta_num = 1, beta_den = 2;
};

// An L-function given on the logarithmic side: log L(s) = sum_p sum_k
// b(p^k) p^{-ks}, with |b(p^k)| <= K p^{k theta}, theta < 1/2.
struct LFunctionSpec {
    std::string label;
    double growth_k = 1.0;      // K
    double growth_theta = 0.0;  // theta
    std::function<cplx(std::uint64_t p, int k)> log_coeff;
    std::optional<CoeffBound> coeff_bound;
};

// a(p^0..kmax) from b via k*a(p^k) = sum_{j=1}^{k} j*b(p^j)*a(p^{k-j}).
inline std::vector<cplx> prime_power_coeffs(const LFunctionSpec& spec, std::uint64_t p, int kmax) {
    std::vector<cplx> a(kmax + 1), b(kmax + 1);
    a[0] = 1.0;
    for (int j = 1; j <= kmax; ++j) b[j] = spec.log_coeff(p, j);
    for (int k = 1; k <= kmax; ++k) {
        cplx acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += double(j) * b[j] * a[k - j];
        a[k] = acc / double(k);
    }
    return a;
}

// Multiplicative expansion a(1..limit) driven by a smallest-prime-factor sieve.
inline std::vector<cplx> coefficients_up_to(const LFunctionSpec& spec, std::uint32_t limit) {
    std::vector<cplx> a(static_cast<std::size_t>(limit) + 1, cplx(0.0));
    if (limit == 0) return a;
    a[1] = 1.0;
    auto spf = smallest_factor_sieve(limit);
    std::map<std::uint32_t, std::vector<cplx>> local;
    for (std::uint32_t n = 2; n <= limit; ++n) {
        std::uint32_t p = spf[n], m = n;
        int k = 0;
        while (m % p == 0) { m /= p; ++k; }
        auto& pk = local[p];
        if (static_cast<int>(pk.size()) <= k) {
            int kmax = 0;
            std::uint64_t q = 1;
            while (q <= limit / p) { q *= p; ++kmax; }
            pk = prime_power_coeffs(spec, p, std::max(k, kmax));
        }
        a[n] = pk[k] * a[m];
    }
    return a;
}

// sup_{2 <= n <= limit} |a(n)| / n^beta; an estimate, not a proof.
inline double empirical_coeff_bound(const LFunctionSpec& spec, double beta, std::uint32_t limit) {
    auto a = coefficients_up_to(spec, limit);
    double best = 0.0;
    for (std::uint32_t n = 2; n <= limit; ++n)
        best = std::max(best, std::abs(a[n]) / std::pow(double(n), beta));
    return best;
}

// Effective coefficient bound used by tail estimates: the spec's exact bound
// when present, else the empirical sup with beta = 1/2 (flagged).
struct EffectiveBound {
    double A;
    double beta;
    bool empirical;
};

inline EffectiveBound effective_coeff_bound(const LFunctionSpec& spec, std::uint32_t scan_limit = 10000) {
    if (spec.coeff_bound && spec.coeff_bound->exact)
        return {spec.coeff_bound->A, spec.coeff_bound->beta, false};
    return {empirical_coeff_bound(spec, 0.5, scan_limit), 0.5, true};
}

// log L(s) = sum_{p<=P} sum_{k<=Kmax} b(p^k) p^{-ks} with a rigorous bound on
// the dropped terms: per-prime power tails K x^{k0+1}/(1-x), x = p^{theta-sigma},
// plus the prime tail K * integral_P^inf u^{theta-sigma} du / (1 - 2^{theta-sigma}).
inline EvalResult eval_log_L(const LFunctionSpec& spec, cplx s, std::uint64_t prime_cutoff,
                             int power_cutoff, const PrimeTable* primes = nullptr) {
    const double sigma = s.real();
    if (sigma <= 1.0) throw domain_error("eval_log_L: Re(s) must exceed 1");
    if (prime_cutoff < 2 || power_cutoff < 2) throw domain_error("eval_log_L: cutoffs must be >= 2");
    const double K = spec.growth_k, theta = spec.growth_theta;
    if (sigma - theta <= 1.0)
        throw precision_error("eval_log_L: tail divergent (theta >= Re(s)-1)");

    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    cplx value = 0.0;
    double tail = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        const double lp = std::log(double(p));
        const double x = std::exp((theta - sigma) * lp);
        int k = 1;
        for (; k <= power_cutoff; ++k) {
            double mag_bound = K * std::exp(-double(k) * (sigma - theta) * lp);
            if (mag_bound < 1e-19) break;
            value += spec.log_coeff(p, k) * std::exp(-double(k) * s * lp);
        }
        // powers k..inf of this prime were dropped
        tail += K * std::pow(x, double(k)) / (1.0 - x);
    }
    const double P = double(prime_cutoff);
    tail += K * std::pow(P, theta - sigma + 1.0) / ((sigma - theta - 1.0) * (1.0 - std::pow(2.0, theta - sigma)));
    return {value, tail};
}

// L(s) = exp(log L(s)); |e^w - e^what| <= e^{|what|+d} d for a log-error d.
inline EvalResult eval_L(const LFunctionSpec& spec, cplx s, std::uint64_t prime_cutoff,
                         int power_cutoff, const PrimeTable* primes = nullptr) {
    EvalResult lg = eval_log_L(spec, s, prime_cutoff, power_cutoff, primes);
    cplx v = std::exp(lg.value);
    double tail = std::exp(std::abs(lg.value) + lg.tail_bound) * lg.tail_bound;
    return {v, tail};
}

// Independent route: expand a(n) multiplicatively and sum sum a(n) n^{-s}.
// Cross-check oracle for eval_L; requires Re(s) > 1 + beta of the coefficient
// bound so the integral tail converges.
inline EvalResult eval_L_direct(const LFunctionSpec& spec, cplx s, std::uint32_t n_cutoff,
                                std::optional<double> required_tol = std::nullopt) {
    const double sigma = s.real();
    auto bound = effective_coeff_bound(spec);
    if (sigma <= 1.0 + bound.beta)
        throw precision_error("eval_L_direct: Re(s) too small for the coefficient-bound tail");
    auto a = coefficients_up_to(spec, n_cutoff);
    cplx value = 0.0;
    for (std::uint32_t n = 1; n <= n_cutoff; ++n) {
        if (a[n] == cplx(0.0)) continue;
        value += a[n] * std::exp(-s * std::log(double(n)));
    }
    double tail = bound.A * std::pow(double(n_cutoff), bound.beta + 1.0 - sigma) / (sigma - bound.beta - 1.0);
    if (required_tol && tail > *required_tol)
        throw precision_error("eval_L_direct: cutoff too small for requested tolerance");
    return {value, tail};
}

// sum_{p<=P} |a(p)| p^{-sigma}; a(p) = b(p). Tail from |a(p)| <= K p^theta
// (infinite, honestly reported, when sigma <= 1 + theta).
inline EvalResult prime_sum(const LFunctionSpec& spec, double sigma, std::uint64_t prime_cutoff,
                            const PrimeTable* primes = nullptr) {
    if (sigma <= 1.0) throw domain_error("prime_sum: sigma must exceed 1");
    PrimeTable own;
    if (!primes || primes->limit < prime_cutoff) {
        own = sieve_primes(prime_cutoff);
        primes = &own;
    }
    double value = 0.0;
    for (std::uint32_t p : primes->primes) {
        if (p > prime_cutoff) break;
        value += std::abs(spec.log_coeff(p, 1)) * std::pow(double(p), -sigma);
    }
    const double K = spec.growth_k, theta = spec.growth_theta;
    double tail = sigma > 1.0 + theta
                      ? K * std::pow(double(prime_cutoff), 1.0 + theta - sigma) / (sigma - 1.0 - theta)
                      : inf;
    return {cplx(value, 0.0), tail};
}

// ---- shipped specs ----

inline LFunctionSpec zeta_spec() {
    LFunctionSpec sp;
    sp.label = "zeta";
    sp.growth_k = 1.0;
    sp.growth_theta = 0.0;
    sp.log_coeff = [](std::uint64_t, int k) { return cplx(1.0 / double(k), 0.0); };
    sp.coeff_bound = CoeffBound{1.0, 0.0, true, 1, 1, 0, 1};
    return sp;
}

inline LFunctionSpec character_spec(const DirichletCharacter& chi) {
    LFunctionSpec sp;
    sp.label = "L(s,chi mod " + std::to_string(chi.modulus) + ")";
    sp.growth_k = 1.0;
    sp.growth_theta = 0.0;
    sp.log_coeff = [chi](std::uint64_t p, int k) {
        return std::pow(chi(p), k) / double(k);
    };
    sp.coeff_bound = CoeffBound{1.0, 0.0, true, 1, 1, 0, 1};
    return sp;
}

inline LFunctionSpec zeta_power_spec(int k) {
    LFunctionSpec sp;
    sp.label = "zeta^" + std::to_string(k);
    sp.growth_k = double(k);
    sp.growth_theta = 0.0;
    sp.log_coeff = [k](std::uint64_t, int j) { return cplx(double(k) / double(j), 0.0); };
    return sp;  // d_k(n) has no clean (A, beta) with small A; bound stays empirical
}

inline LFunctionSpec with_coeff_bound(LFunctionSpec sp, long long A_num, long long A_den,
                                      long long beta_num, long long beta_den) {
    CoeffBound cb;
    cb.A = double(A_num) / double(A_den);
    cb.beta = double(beta_num) / double(beta_den);
    cb.exact = true;
    cb.A_num = A_num;
    cb.A_den = A_den;
    cb.beta_num = beta_num;
    cb.beta_den = beta_den;
    sp.coeff_bound = cb;
    sp.label += "[n^(" + std::to_string(beta_num) + "/" + std::to_string(beta_den) + ") bound]";
    return sp;
}

}  // namespace lcombo
