#pragma once

#include <utility>

#include "silkswap/invariant.hpp"
#include "silkswap/solver.hpp"

namespace silkswap {

/// Bracket for the on-curve z at a given scaled x: the curve lies between
/// the constant-sum line and the constant-product hyperbola, so
/// F~(x, 1-x) <= 0 <= F~(x, 1/(4x)) whenever the curve point exists.
template <typename T>
std::pair<T, T> scaled_curve_bracket(const T& xs) {
    if (!(xs > Num<T>::zero())) throw std::domain_error("scaled_curve_bracket: x must be positive");
    const T lo = xs < Num<T>::one() ? Num<T>::one() - xs : Num<T>::zero();
    const T hi = Num<T>::one() / (Num<T>::from_int(4) * xs);
    return {lo, hi};
}

/// On-curve z for a given scaled x.
template <typename T>
RootResult<T> solve_scaled_z(const T& xs, const PoolParamsT<T>& params, const RootConfig<T>& cfg,
                             SolveMethod method = SolveMethod::bisection) {
    const auto [lo, hi] = scaled_curve_bracket(xs);
    auto f = [&](const T& z) { return scaled_f(ScaledPointT<T>{xs, z}, params); };
    auto df = [&](const T& z) { return dscaled_dz(ScaledPointT<T>{xs, z}, params); };
    switch (method) {
        case SolveMethod::bisection:
            return bisection(f, lo, hi, cfg);
        case SolveMethod::newton:
            return newton(f, df, hi, cfg);
        case SolveMethod::halley: {
            auto d2f = [&](const T& z) { return d2scaled_dz2(ScaledPointT<T>{xs, z}, params); };
            return halley(f, df, d2f, hi, cfg);
        }
        case SolveMethod::newton_then_bisection:
            return solve_with_fallback(f, df, hi, lo, hi, cfg);
    }
    throw std::logic_error("solve_scaled_z: unknown method");
}

/// On-curve z for the Curve v2 comparison model (same bounds hold since
/// its chi also satisfies 0 < chi <= 1 and chi(1) = 1).
template <typename T>
RootResult<T> solve_scaled_z_curve_v2(const T& xs, const T& amplification, const T& gamma_c,
                                      const RootConfig<T>& cfg) {
    const auto [lo, hi] = scaled_curve_bracket(xs);
    auto f = [&](const T& z) { return curve_v2_scaled_f(ScaledPointT<T>{xs, z}, amplification, gamma_c); };
    return bisection(f, lo, hi, cfg);
}

/// Unscaled convenience: y on the curve at a given x for fixed D.
template <typename T>
RootResult<T> solve_curve_y(const T& x, const T& d, const OraclePricesT<T>& prices,
                            const PoolParamsT<T>& params, const RootConfig<T>& cfg,
                            SolveMethod method = SolveMethod::bisection) {
    RootResult<T> r = solve_scaled_z(x / d, params, cfg, method);
    r.root = r.root * d / prices.conversion;
    return r;
}

/// On-curve point at pool fraction phi = x/(x + p*y): finds the ray scale
/// s with x_s = phi*s, z_s = (1-phi)*s on the curve. The scale lies in
/// [1, 1/(2*sqrt(phi*(1-phi)))] (constant-sum and constant-product bounds).
template <typename T>
ScaledPointT<T> solve_point_at_fraction(const T& phi, const PoolParamsT<T>& params,
                                        const RootConfig<T>& cfg) {
    if (!(phi > Num<T>::zero()) || !(phi < Num<T>::one())) {
        throw std::domain_error("solve_point_at_fraction: fraction must lie in (0, 1)");
    }
    const T one = Num<T>::one();
    const T q = phi * (one - phi);
    const T smax = one / (Num<T>::from_int(2) * Num<T>::sqrt(q));
    auto f = [&](const T& s) {
        return scaled_f(ScaledPointT<T>{phi * s, (one - phi) * s}, params);
    };
    const RootResult<T> r = bisection(f, one, smax, cfg);
    if (!r.converged()) throw SolverError("solve_point_at_fraction: bisection failed");
    return ScaledPointT<T>{phi * r.root, (one - phi) * r.root};
}

}  // namespace silkswap
