#pragma once

#include <random>
#include <string>

// Shared helpers for the test suites: deterministic generators and
// finite-difference oracles kept independent of the library code paths
// they check.
namespace testutil {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    return std::exp(d(rng));
}

inline long long uniform_int(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// Decimal string with the given digit counts; parses to the identical
/// value on both numeric backends (no binary rounding at the source).
inline std::string random_decimal_string(Rng& rng, int int_digits, int frac_digits,
                                         bool allow_negative = false) {
    std::string s;
    if (allow_negative && uniform_int(rng, 0, 1) == 1) s += '-';
    s += std::to_string(uniform_int(rng, 1, 9));
    for (int i = 1; i < int_digits; ++i) s += std::to_string(uniform_int(rng, 0, 9));
    if (frac_digits > 0) {
        s += '.';
        for (int i = 0; i < frac_digits; ++i) s += std::to_string(uniform_int(rng, 0, 9));
    }
    return s;
}

template <typename F>
double central_diff(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <typename F>
double central_diff2(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace testutil
