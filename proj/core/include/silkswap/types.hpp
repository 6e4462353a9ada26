#pragma once

#include <stdexcept>

#include "silkswap/numeric.hpp"

namespace silkswap {

/// Shape parameters of the invariant: amplification A plus the two
/// exponents that control curvature on each side of the equilibrium
/// line x = p*y. A > 0; the exponents are small non-negative integers.
template <typename T>
struct PoolParamsT {
    T amplification;
    unsigned gamma1 = 1;
    unsigned gamma2 = 1;

    void validate() const {
        if (!(amplification > Num<T>::zero())) {
            throw std::invalid_argument("PoolParams: amplification must be positive");
        }
    }
};

/// Oracle-fed market prices of the two tokens (in a common quote
/// currency) and the derived conversion factor p = price_y / price_x,
/// the price of one unit of Y in units of X.
template <typename T>
struct OraclePricesT {
    T price_x;
    T price_y;
    T conversion;

    static OraclePricesT make(const T& price_x, const T& price_y) {
        if (!(price_x > Num<T>::zero()) || !(price_y > Num<T>::zero())) {
            throw std::invalid_argument("OraclePrices: prices must be positive");
        }
        return OraclePricesT{price_x, price_y, price_y / price_x};
    }

    static OraclePricesT unit() { return make(Num<T>::one(), Num<T>::one()); }
};

/// Token balances (x of X, y of Y).
template <typename T>
struct PointT {
    T x;
    T y;
};

/// Dimensionless curve coordinates: x_s = x/D and z_s = p*y/D.
template <typename T>
struct ScaledPointT {
    T x;
    T z;
};

using PoolParams = PoolParamsT<double>;
using OraclePrices = OraclePricesT<double>;
using Point = PointT<double>;
using ScaledPoint = ScaledPointT<double>;

}  // namespace silkswap
