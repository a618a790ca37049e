#pragma once

#include <cstdint>
#include <vector>

#include "lcombo/common.hpp"

namespace lcombo {

// All primes <= limit, ascending.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;
};

// Plain sieve of Eratosthenes; limits used in this project stay well below
// the point where a segmented sieve would pay off.
inline PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw domain_error("sieve_primes: limit must be >= 2");
    std::vector<bool> comp(limit + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        table.primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return table;
}

// Smallest-prime-factor table for n <= limit; spf[0] = spf[1] = 0.
inline std::vector<std::uint32_t> smallest_factor_sieve(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

struct PrimePower {
    std::uint64_t p;
    int k;
};

// Factorization by trial division; fine for the sparse term lists it serves.
inline std::vector<PrimePower> factorize(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) { n /= p; ++k; }
        out.push_back({p, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

}  // namespace lcombo
