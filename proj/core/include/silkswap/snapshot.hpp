#pragma once

#include <string>
#include <string_view>

#include "silkswap/pool.hpp"

namespace silkswap {

// Backend conversions for serialized values.
template <typename T>
struct DecimalConv;

template <>
struct DecimalConv<double> {
    static double from(const SignedDecimal& v) { return v.to_double(); }
    static SignedDecimal to(double v) { return SignedDecimal::from_double(v); }
};

template <>
struct DecimalConv<SignedDecimal> {
    static const SignedDecimal& from(const SignedDecimal& v) { return v; }
    static const SignedDecimal& to(const SignedDecimal& v) { return v; }
};

/// Flat key-value pool snapshot: one `key=value` line per field, values
/// as 18-decimal strings. Used by the CLI for persistence and by test
/// fixtures. Keys: x, y, d, p_x, p_y, a, gamma1, gamma2, fee_rate.
struct PoolSnapshot {
    SignedDecimal x;
    SignedDecimal y;
    SignedDecimal d;
    SignedDecimal p_x;
    SignedDecimal p_y;
    SignedDecimal a;
    unsigned gamma1 = 1;
    unsigned gamma2 = 1;
    SignedDecimal fee_rate;

    /// Parses the key-value text; every key must appear exactly once.
    /// Blank lines and lines starting with '#' are ignored.
    static PoolSnapshot from_text(std::string_view text);

    std::string to_text() const;

    template <typename T>
    PoolStateT<T> to_state() const {
        PoolStateT<T> s;
        s.x = DecimalConv<T>::from(x);
        s.y = DecimalConv<T>::from(y);
        s.d = DecimalConv<T>::from(d);
        s.params = PoolParamsT<T>{DecimalConv<T>::from(a), gamma1, gamma2};
        s.params.validate();
        s.prices = OraclePricesT<T>::make(DecimalConv<T>::from(p_x), DecimalConv<T>::from(p_y));
        s.fee_rate = DecimalConv<T>::from(fee_rate);
        if (!(s.x > Num<T>::zero()) || !(s.y > Num<T>::zero()) || !(s.d > Num<T>::zero())) {
            throw std::invalid_argument("PoolSnapshot: balances and d must be positive");
        }
        if (Num<T>::is_negative(s.fee_rate) || !(s.fee_rate < Num<T>::one())) {
            throw std::invalid_argument("PoolSnapshot: fee_rate must lie in [0, 1)");
        }
        return s;
    }

    template <typename T>
    static PoolSnapshot from_state(const PoolStateT<T>& s) {
        PoolSnapshot snap;
        snap.x = DecimalConv<T>::to(s.x);
        snap.y = DecimalConv<T>::to(s.y);
        snap.d = DecimalConv<T>::to(s.d);
        snap.p_x = DecimalConv<T>::to(s.prices.price_x);
        snap.p_y = DecimalConv<T>::to(s.prices.price_y);
        snap.a = DecimalConv<T>::to(s.params.amplification);
        snap.gamma1 = s.params.gamma1;
        snap.gamma2 = s.params.gamma2;
        snap.fee_rate = DecimalConv<T>::to(s.fee_rate);
        return snap;
    }
};

}  // namespace silkswap
