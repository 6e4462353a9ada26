#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "silkswap/numeric.hpp"

namespace silkswap {

enum class SolveStatus { converged, max_iterations, diverged, left_domain };
enum class SolveMethod { newton, halley, bisection, newton_then_bisection };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::diverged: return "diverged";
        case SolveStatus::left_domain: return "left_domain";
    }
    return "?";
}

inline const char* to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::newton: return "newton";
        case SolveMethod::halley: return "halley";
        case SolveMethod::bisection: return "bisection";
        case SolveMethod::newton_then_bisection: return "newton_then_bisection";
    }
    return "?";
}

/// Raised when a solve that must succeed does not.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
struct RootConfig {
    T tolerance;
    int max_iterations = 128;
    /// Pre-check floor: |f(x0)| <= residual_floor returns x0 with zero
    /// iterations. Default 0 accepts only an exact root.
    T residual_floor = Num<T>::zero();
};

template <typename T>
RootConfig<T> default_root_config() {
    // 1e-16, the working tolerance used throughout
    return RootConfig<T>{Num<T>::ratio(1, 10'000'000'000'000'000LL), 128, Num<T>::zero()};
}

template <typename T>
struct RootResult {
    T root{};
    int iterations = 0;
    SolveStatus status = SolveStatus::converged;
    SolveMethod method_used = SolveMethod::newton;

    bool converged() const { return status == SolveStatus::converged; }
};

/// Open interval guard for Newton/Halley iterates.
template <typename T>
struct OpenInterval {
    T lo;
    T hi;
    bool contains(const T& v) const { return lo < v && v < hi; }
};

template <typename T>
OpenInterval<T> positive_domain() {
    if constexpr (Num<T>::is_fixed_point) {
        return OpenInterval<T>{Num<T>::zero(), SignedDecimal::max_value()};
    } else {
        return OpenInterval<T>{0.0, std::numeric_limits<double>::infinity()};
    }
}

// ------------------------------------------------------------------
// Newton. One iteration = one applied update x -> x - f/f'. Stops when
// the applied step is within tolerance. Failures are reported as
// statuses so a caller can fall back to bisection.
// ------------------------------------------------------------------
template <typename T, typename F, typename DF>
RootResult<T> newton(F&& f, DF&& df, T x0, const RootConfig<T>& cfg,
                     OpenInterval<T> domain = positive_domain<T>()) {
    if (Num<T>::abs(f(x0)) <= cfg.residual_floor) {
        return RootResult<T>{x0, 0, SolveStatus::converged, SolveMethod::newton};
    }
    T x = x0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        const T d = df(x);
        if (d == Num<T>::zero()) {
            return RootResult<T>{x, it, SolveStatus::diverged, SolveMethod::newton};
        }
        const T x1 = x - f(x) / d;
        if (!domain.contains(x1)) {
            return RootResult<T>{x1, it, SolveStatus::left_domain, SolveMethod::newton};
        }
        if (Num<T>::abs(x1 - x) <= cfg.tolerance) {
            return RootResult<T>{x1, it, SolveStatus::converged, SolveMethod::newton};
        }
        x = x1;
    }
    return RootResult<T>{x, cfg.max_iterations, SolveStatus::max_iterations, SolveMethod::newton};
}

// ------------------------------------------------------------------
// Halley: x -> x - 2*f*f' / (2*f'^2 - f*f''). Same stopping and status
// rules as Newton.
// ------------------------------------------------------------------
template <typename T, typename F, typename DF, typename D2F>
RootResult<T> halley(F&& f, DF&& df, D2F&& d2f, T x0, const RootConfig<T>& cfg,
                     OpenInterval<T> domain = positive_domain<T>()) {
    if (Num<T>::abs(f(x0)) <= cfg.residual_floor) {
        return RootResult<T>{x0, 0, SolveStatus::converged, SolveMethod::halley};
    }
    T x = x0;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        const T fx = f(x);
        const T dx = df(x);
        const T den = Num<T>::from_int(2) * dx * dx - fx * d2f(x);
        if (den == Num<T>::zero()) {
            return RootResult<T>{x, it, SolveStatus::diverged, SolveMethod::halley};
        }
        const T x1 = x - Num<T>::from_int(2) * fx * dx / den;
        if (!domain.contains(x1)) {
            return RootResult<T>{x1, it, SolveStatus::left_domain, SolveMethod::halley};
        }
        if (Num<T>::abs(x1 - x) <= cfg.tolerance) {
            return RootResult<T>{x1, it, SolveStatus::converged, SolveMethod::halley};
        }
        x = x1;
    }
    return RootResult<T>{x, cfg.max_iterations, SolveStatus::max_iterations, SolveMethod::halley};
}

// ------------------------------------------------------------------
// Bisection. Requires f(lo)*f(hi) <= 0. Halves the bracket until the
// midpoint is within tolerance of the root (half-width <= tolerance)
// and returns the midpoint; iterations = number of halvings, which for
// an inexact ratio equals ceil(log2(width / (2*tolerance))). Stops
// early if the bracket reaches the resolution floor of the arithmetic.
// ------------------------------------------------------------------
template <typename T, typename F>
RootResult<T> bisection(F&& f, T lo, T hi, const RootConfig<T>& cfg) {
    if (hi < lo) std::swap(lo, hi);
    T flo = f(lo);
    if (flo == Num<T>::zero()) return RootResult<T>{lo, 0, SolveStatus::converged, SolveMethod::bisection};
    const T fhi = f(hi);
    if (fhi == Num<T>::zero()) return RootResult<T>{hi, 0, SolveStatus::converged, SolveMethod::bisection};
    if (Num<T>::is_negative(flo) == Num<T>::is_negative(fhi)) {
        throw std::invalid_argument("bisection: f(lo) and f(hi) have the same sign");
    }

    const T two = Num<T>::from_int(2);
    int it = 0;
    bool exact = false;
    bool stalled = false;
    while (hi - lo > two * cfg.tolerance && it < cfg.max_iterations) {
        const T mid = lo + (hi - lo) / two;
        if (mid == lo || mid == hi) {
            stalled = true;  // resolution floor of the arithmetic
            break;
        }
        ++it;
        const T fm = f(mid);
        if (fm == Num<T>::zero()) {
            lo = hi = mid;
            exact = true;
            break;
        }
        if (Num<T>::is_negative(fm) == Num<T>::is_negative(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const T root = lo + (hi - lo) / two;
    SolveStatus status = SolveStatus::converged;
    if (!exact && !stalled && hi - lo > two * cfg.tolerance) {
        status = SolveStatus::max_iterations;
    }
    return RootResult<T>{root, it, status, SolveMethod::bisection};
}

/// Closed-form halving count of the bisection above: the smallest n with
/// width / 2^n <= 2 * tolerance (0 when the bracket already satisfies it).
inline int bisection_iteration_bound(double width, double tolerance) {
    int n = 0;
    while (width > 2.0 * tolerance) {
        width /= 2.0;
        ++n;
    }
    return n;
}

// ------------------------------------------------------------------
// Production policy: Newton first; on any failure status, an overflow
// inside the objective, or a converged root outside [lo, hi], rerun
// with bisection on the bracket. Never returns a root outside it.
// ------------------------------------------------------------------
template <typename T, typename F, typename DF>
RootResult<T> solve_with_fallback(F&& f, DF&& df, T x0, const T& lo, const T& hi,
                                  const RootConfig<T>& cfg,
                                  OpenInterval<T> domain = positive_domain<T>()) {
    RootResult<T> first;
    bool newton_threw = false;
    try {
        first = newton(f, df, x0, cfg, domain);
    } catch (const std::overflow_error&) {
        newton_threw = true;
        first.iterations = 0;
    }
    if (!newton_threw && first.converged() && lo <= first.root && first.root <= hi) {
        return first;
    }
    RootResult<T> second = bisection(f, lo, hi, cfg);
    second.method_used = SolveMethod::newton_then_bisection;
    second.iterations += first.iterations;
    return second;
}

}  // namespace silkswap
