#pragma once

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcombo/common.hpp"

namespace lcombo {

// Completely multiplicative periodic coefficient table mod q.
// values[r] = chi(r) for residues r in [0, q); chi(r) = 0 iff gcd(r, q) > 1.
struct DirichletCharacter {
    std::uint32_t modulus = 1;
    std::vector<cplx> values;

    cplx operator()(std::uint64_t n) const {
        return values[static_cast<std::size_t>(n % modulus)];
    }
};

namespace detail {
inline constexpr double char_tol = 1e-9;
}

// Full multiplicativity + root-of-unity audit; throws validation_error naming
// the offending residue pair.
inline void validate_character(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus;
    if (q == 0 || chi.values.size() != q) throw validation_error("character: bad table size");
    for (std::uint64_t r = 0; r < q; ++r) {
        bool unit = std::gcd(r, q) == 1;
        double a = std::abs(chi.values[r]);
        if (unit && std::abs(a - 1.0) > detail::char_tol)
            throw validation_error("character: |chi(" + std::to_string(r) + ")| != 1");
        if (!unit && a > detail::char_tol)
            throw validation_error("character: chi(" + std::to_string(r) + ") != 0 off units");
    }
    if (q >= 1 && std::abs(chi.values[1 % q] - cplx(1.0, 0.0)) > detail::char_tol)
        throw validation_error("character: chi(1) != 1");
    for (std::uint64_t m = 0; m < q; ++m)
        for (std::uint64_t n = m; n < q; ++n)
            if (std::abs(chi.values[m] * chi.values[n] - chi.values[(m * n) % q]) > detail::char_tol)
                throw validation_error("character: chi(m)chi(n) != chi(mn) at (" +
                                       std::to_string(m) + "," + std::to_string(n) + ")");
}

// Builds the full table from assignments on a generating set by
// multiplicative closure, then validates. q = 1 gives the all-ones character
// (Riemann zeta case).
inline DirichletCharacter character_from_table(std::uint32_t q,
                                               const std::map<std::uint32_t, cplx>& assignments) {
    if (q == 0) throw validation_error("character: modulus must be positive");
    DirichletCharacter chi;
    chi.modulus = q;
    if (q == 1) {
        chi.values = {cplx(1.0, 0.0)};
        return chi;
    }
    const cplx unset(inf, inf);
    chi.values.assign(q, unset);
    for (std::uint32_t r = 0; r < q; ++r)
        if (std::gcd<std::uint64_t>(r, q) != 1) chi.values[r] = 0.0;
    chi.values[1] = 1.0;

    auto set_value = [&](std::uint64_t r, cplx v, std::uint64_t a, std::uint64_t b) {
        cplx& slot = chi.values[static_cast<std::size_t>(r)];
        if (slot == unset) {
            slot = v;
            return true;
        }
        if (std::abs(slot - v) > detail::char_tol)
            throw validation_error("character: inconsistent value at residue " + std::to_string(r) +
                                   " from pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
        return false;
    };

    for (auto [r, v] : assignments) {
        if (std::gcd<std::uint64_t>(r % q, q) != 1) {
            if (std::abs(v) > detail::char_tol)
                throw validation_error("character: nonzero assignment on non-unit residue " +
                                       std::to_string(r));
            continue;
        }
        set_value(r % q, v, r % q, 1);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint64_t a = 2; a < q; ++a) {
            if (chi.values[a] == unset || std::abs(chi.values[a]) < detail::char_tol) continue;
            for (std::uint64_t b = a; b < q; ++b) {
                if (chi.values[b] == unset || std::abs(chi.values[b]) < detail::char_tol) continue;
                changed |= set_value((a * b) % q, chi.values[a] * chi.values[b], a, b);
            }
        }
    }
    for (std::uint64_t r = 0; r < q; ++r)
        if (chi.values[r] == unset)
            throw validation_error("character: assignments do not determine residue " +
                                   std::to_string(r));
    validate_character(chi);
    return chi;
}

// { "modulus": 5, "values": { "2": [0, 1], ... } }, complex as [re, im].
// The value map may be partial (a generating set); the rest is derived.
inline DirichletCharacter character_from_json(const nlohmann::json& doc) {
    if (!doc.contains("modulus") || !doc["modulus"].is_number_unsigned())
        throw validation_error("character json: missing positive \"modulus\"");
    std::uint32_t q = doc["modulus"].get<std::uint32_t>();
    std::map<std::uint32_t, cplx> assign;
    if (doc.contains("values")) {
        for (auto& [key, val] : doc["values"].items()) {
            if (!val.is_array() || val.size() != 2)
                throw validation_error("character json: value for residue " + key +
                                       " must be [re, im]");
            assign[static_cast<std::uint32_t>(std::stoul(key))] =
                cplx(val[0].get<double>(), val[1].get<double>());
        }
    }
    return character_from_table(q, assign);
}

}  // namespace lcombo
