#pragma once

#include "silkswap/numeric.hpp"
#include "silkswap/types.hpp"

namespace silkswap {

// ------------------------------------------------------------------
// Exponent selection. The boundary x == p*y belongs to gamma1; the
// same rule applies verbatim to scaled coordinates.
// ------------------------------------------------------------------

template <typename T>
unsigned select_gamma(const T& x, const T& py, const PoolParamsT<T>& params) {
    return x <= py ? params.gamma1 : params.gamma2;
}

template <typename T>
unsigned select_gamma_scaled(const ScaledPointT<T>& s, const PoolParamsT<T>& params) {
    return s.x <= s.z ? params.gamma1 : params.gamma2;
}

template <typename T>
ScaledPointT<T> to_scaled(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices) {
    return ScaledPointT<T>{pt.x / d, prices.conversion * pt.y / d};
}

// ------------------------------------------------------------------
// Leverage weight chi and the invariant function
// ------------------------------------------------------------------

/// chi = (4*x*p*y / D^2)^gamma, dimensionless; equals 1 at equilibrium.
template <typename T>
T chi(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices, const PoolParamsT<T>& params) {
    const T py = prices.conversion * pt.y;
    const T u = Num<T>::from_int(4) * pt.x * py / (d * d);
    return Num<T>::pow_uint(u, select_gamma(pt.x, py, params));
}

/// F(x, y) = A*D*chi*(x + p*y - D) + x*p*y - D^2/4.
/// The invariant curve is the zero set of this function.
template <typename T>
T invariant_f(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
              const PoolParamsT<T>& params) {
    const T py = prices.conversion * pt.y;
    const T u = Num<T>::from_int(4) * pt.x * py / (d * d);
    const T c = Num<T>::pow_uint(u, select_gamma(pt.x, py, params));
    return params.amplification * d * c * (pt.x + py - d) + pt.x * py - d * d / Num<T>::from_int(4);
}

/// dF/dx = A*D*chi*[1 + gamma*(x + p*y - D)/x] + p*y
template <typename T>
T partial_f_x(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
              const PoolParamsT<T>& params) {
    const T py = prices.conversion * pt.y;
    const unsigned g = select_gamma(pt.x, py, params);
    const T u = Num<T>::from_int(4) * pt.x * py / (d * d);
    const T c = Num<T>::pow_uint(u, g);
    const T bracket = Num<T>::one() + Num<T>::from_int(g) * (pt.x + py - d) / pt.x;
    return params.amplification * d * c * bracket + py;
}

/// dF/dy = A*D*chi*[p + gamma*(x + p*y - D)/y] + p*x
template <typename T>
T partial_f_y(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
              const PoolParamsT<T>& params) {
    const T py = prices.conversion * pt.y;
    const unsigned g = select_gamma(pt.x, py, params);
    const T u = Num<T>::from_int(4) * pt.x * py / (d * d);
    const T c = Num<T>::pow_uint(u, g);
    const T bracket = prices.conversion + Num<T>::from_int(g) * (pt.x + py - d) / pt.y;
    return params.amplification * d * c * bracket + prices.conversion * pt.x;
}

// ------------------------------------------------------------------
// Scaled invariant and its derivatives. x_s = x/D, z_s = p*y/D.
// The swap solver works entirely in these coordinates.
// ------------------------------------------------------------------

/// F~(x_s, z_s) = A*(4*x_s*z_s)^gamma*(x_s + z_s - 1) + x_s*z_s - 1/4
template <typename T>
T scaled_f(const ScaledPointT<T>& s, const PoolParamsT<T>& params) {
    const T u = Num<T>::from_int(4) * s.x * s.z;
    const T c = Num<T>::pow_uint(u, select_gamma_scaled(s, params));
    return params.amplification * c * (s.x + s.z - Num<T>::one()) + s.x * s.z - Num<T>::ratio(1, 4);
}

template <typename T>
T dscaled_dx(const ScaledPointT<T>& s, const PoolParamsT<T>& params) {
    const unsigned g = select_gamma_scaled(s, params);
    const T u = Num<T>::from_int(4) * s.x * s.z;
    const T c = Num<T>::pow_uint(u, g);
    const T bracket = Num<T>::from_int(g) * (s.x + s.z - Num<T>::one()) / s.x + Num<T>::one();
    return params.amplification * c * bracket + s.z;
}

template <typename T>
T dscaled_dz(const ScaledPointT<T>& s, const PoolParamsT<T>& params) {
    const unsigned g = select_gamma_scaled(s, params);
    const T u = Num<T>::from_int(4) * s.x * s.z;
    const T c = Num<T>::pow_uint(u, g);
    const T bracket = Num<T>::from_int(g) * (s.x + s.z - Num<T>::one()) / s.z + Num<T>::one();
    return params.amplification * c * bracket + s.x;
}

template <typename T>
T d2scaled_dx2(const ScaledPointT<T>& s, const PoolParamsT<T>& params) {
    const unsigned g = select_gamma_scaled(s, params);
    if (g == 0) return Num<T>::zero();
    const T u = Num<T>::from_int(4) * s.x * s.z;
    const T c = Num<T>::pow_uint(u, g - 1);
    const T bracket =
        Num<T>::from_int(2) + Num<T>::from_int(g - 1) * (s.x + s.z - Num<T>::one()) / s.x;
    return Num<T>::from_int(4) * s.z * Num<T>::from_int(g) * params.amplification * c * bracket;
}

template <typename T>
T d2scaled_dz2(const ScaledPointT<T>& s, const PoolParamsT<T>& params) {
    const unsigned g = select_gamma_scaled(s, params);
    if (g == 0) return Num<T>::zero();
    const T u = Num<T>::from_int(4) * s.x * s.z;
    const T c = Num<T>::pow_uint(u, g - 1);
    const T bracket =
        Num<T>::from_int(2) + Num<T>::from_int(g - 1) * (s.x + s.z - Num<T>::one()) / s.z;
    return Num<T>::from_int(4) * s.x * Num<T>::from_int(g) * params.amplification * c * bracket;
}

// ------------------------------------------------------------------
// Derivatives of F in D, used by the D solver
// ------------------------------------------------------------------

/// dF/dD = A*chi*[(1 - 2*gamma)*(x + p*y - D) - D] - D/2
template <typename T>
T df_dD(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
        const PoolParamsT<T>& params) {
    const T py = prices.conversion * pt.y;
    const unsigned g = select_gamma(pt.x, py, params);
    const T u = Num<T>::from_int(4) * pt.x * py / (d * d);
    const T c = Num<T>::pow_uint(u, g);
    const T bracket =
        Num<T>::from_int(1 - 2 * static_cast<long long>(g)) * (pt.x + py - d) - d;
    return params.amplification * c * bracket - d / Num<T>::from_int(2);
}

/// d2F/dD2 = A*chi*[4*gamma - 2 + 2*gamma*(2*gamma - 1)*(x/D + p*y/D - 1)] - 1/2
template <typename T>
T d2f_dD2(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
          const PoolParamsT<T>& params) {
    const T py = prices.conversion * pt.y;
    const long long g = static_cast<long long>(select_gamma(pt.x, py, params));
    const T u = Num<T>::from_int(4) * pt.x * py / (d * d);
    const T c = Num<T>::pow_uint(u, static_cast<unsigned>(g));
    const T rel = pt.x / d + py / d - Num<T>::one();
    const T bracket = Num<T>::from_int(4 * g - 2) + Num<T>::from_int(2 * g * (2 * g - 1)) * rel;
    return params.amplification * c * bracket - Num<T>::ratio(1, 2);
}

// ------------------------------------------------------------------
// Slope and spot prices (implicit differentiation). Defined only on the
// invariant set; callers must pass a point with |F~| within tolerance.
// ------------------------------------------------------------------

template <typename T>
T default_on_curve_tolerance() {
    return Num<T>::ratio(1, 1'000'000'000);  // 1e-9 on the scaled residual
}

template <typename T>
void require_on_curve(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
                      const PoolParamsT<T>& params, const T& tol) {
    const T resid = Num<T>::abs(scaled_f(to_scaled(pt, d, prices), params));
    if (resid > tol) {
        throw std::domain_error("point is off the invariant curve beyond tolerance");
    }
}

/// dy/dx = -dF/dx / dF/dy; always negative on the curve.
template <typename T>
T slope_dy_dx(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
              const PoolParamsT<T>& params, const T& tol = default_on_curve_tolerance<T>()) {
    require_on_curve(pt, d, prices, params, tol);
    return -(partial_f_x(pt, d, prices, params) / partial_f_y(pt, d, prices, params));
}

/// P_X = |dy/dx|
template <typename T>
T spot_price_x(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
               const PoolParamsT<T>& params, const T& tol = default_on_curve_tolerance<T>()) {
    return Num<T>::abs(slope_dy_dx(pt, d, prices, params, tol));
}

/// P_Y = 1 / P_X
template <typename T>
T spot_price_y(const PointT<T>& pt, const T& d, const OraclePricesT<T>& prices,
               const PoolParamsT<T>& params, const T& tol = default_on_curve_tolerance<T>()) {
    return Num<T>::one() / spot_price_x(pt, d, prices, params, tol);
}

/// Price of Y at a scaled point, p * dF~/dz / dF~/dx. No residual check;
/// intended for points the solver just produced.
template <typename T>
T price_y_scaled(const ScaledPointT<T>& s, const PoolParamsT<T>& params, const T& conversion) {
    return conversion * dscaled_dz(s, params) / dscaled_dx(s, params);
}

// ------------------------------------------------------------------
// Reference curves
// ------------------------------------------------------------------

/// Constant-product curve y = D^2 / (4*p*x); upper bound of the invariant.
template <typename T>
T cpmm_y(const T& x, const T& d, const T& conversion) {
    if (!(x > Num<T>::zero())) throw std::domain_error("cpmm_y: x must be positive");
    return d * d / (Num<T>::from_int(4) * conversion * x);
}

/// Constant-sum line y = (D - x)/p, defined for 0 < x < D; lower bound.
template <typename T>
T csmm_y(const T& x, const T& d, const T& conversion) {
    if (!(x > Num<T>::zero()) || !(x < d)) {
        throw std::domain_error("csmm_y: x must lie in (0, D)");
    }
    return (d - x) / conversion;
}

// ------------------------------------------------------------------
// Curve v2 comparison: same hybrid combination, different chi
// ------------------------------------------------------------------

/// chi_curve = u * (gamma_c / (gamma_c + 1 - u))^2 with u = 4*x_s*z_s.
template <typename T>
T curve_v2_chi(const T& xs, const T& zs, const T& gamma_c) {
    if (!(gamma_c > Num<T>::zero())) throw std::invalid_argument("curve_v2_chi: gamma_c must be positive");
    const T u = Num<T>::from_int(4) * xs * zs;
    const T r = gamma_c / (gamma_c + Num<T>::one() - u);
    return u * r * r;
}

/// Scaled Curve v2 invariant with the hybrid form A*chi*(x+z-1) + x*z - 1/4.
template <typename T>
T curve_v2_scaled_f(const ScaledPointT<T>& s, const T& amplification, const T& gamma_c) {
    const T c = curve_v2_chi(s.x, s.z, gamma_c);
    return amplification * c * (s.x + s.z - Num<T>::one()) + s.x * s.z - Num<T>::ratio(1, 4);
}

}  // namespace silkswap
