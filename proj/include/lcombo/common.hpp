#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcombo {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();

// Evaluation outside the contracted domain (sigma <= 1, r <= 1, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested tolerance not reachable at the given cutoffs, or a tail bound
// that does not converge for the given parameters.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ill-formed input data (character tables, assignments, ...).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A condition the surrounding theory guarantees failed to hold numerically;
// signals a bug or parameters outside the guaranteed regime.
struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Value of a truncated series together with a rigorous bound on the modulus
// of everything that was dropped. Roundoff is not tracked (binary64
// arithmetic; tolerances downstream are chosen >= 100x machine epsilon).
struct EvalResult {
    cplx value{};
    double tail_bound = 0.0;
};

inline double sqr(double x) { return x * x; }

// Total turning of the closed polyline p[0] -> p[1] -> ... -> p[0] around the
// origin, in full turns. Requires no vertex at the origin.
inline double closed_polyline_winding(const std::vector<cplx>& pts) {
    if (pts.size() < 3) throw std::invalid_argument("winding: need >= 3 points");
    double total = 0.0;
    cplx prev = pts.back();
    for (const cplx& p : pts) {
        if (std::abs(p) == 0.0) throw std::invalid_argument("winding: vertex at origin");
        total += std::arg(p / prev);
        prev = p;
    }
    return total / (2.0 * pi);
}

// "re+imi" / "re-imi" / "re" / "imi" parser used by the CLI and tests.
inline cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw validation_error("empty complex literal");
    // split at the last '+'/'-' that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto to_d = [](const std::string& t) {
        std::size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw validation_error("bad number in complex literal: " + t);
        return v;
    };
    if (!s.empty() && s.back() == 'i') {
        std::string head = s.substr(0, s.size() - 1);
        if (split == std::string::npos) {
            if (head.empty() || head == "+") return {0.0, 1.0};
            if (head == "-") return {0.0, -1.0};
            return {0.0, to_d(head)};
        }
        std::string re = s.substr(0, split);
        std::string im = head.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {to_d(re), to_d(im)};
    }
    return {to_d(s), 0.0};
}

}  // namespace lcombo
