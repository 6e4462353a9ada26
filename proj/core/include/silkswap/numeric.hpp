#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "silkswap/decimal.hpp"

namespace silkswap {

// Numeric backend traits. The pool math is written once against plain
// operators plus the hooks below, and instantiated for two backends:
// `double` as the reference float path and SignedDecimal as the
// integer-only fixed-point path.
template <typename T>
struct Num;

template <>
struct Num<double> {
    static constexpr bool is_fixed_point = false;

    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long long v) { return static_cast<double>(v); }
    static double ratio(long long n, long long d) {
        return static_cast<double>(n) / static_cast<double>(d);
    }
    static double parse(std::string_view s) {
        std::size_t pos = 0;
        const std::string tmp(s);
        const double v = std::stod(tmp, &pos);
        if (pos != tmp.size()) throw std::invalid_argument("Num<double>::parse: trailing characters");
        return v;
    }
    static double abs(double v) { return std::fabs(v); }
    static bool is_negative(double v) { return v < 0.0; }
    static double sqrt(double v) {
        if (v < 0.0) throw std::domain_error("sqrt of negative value");
        return std::sqrt(v);
    }
    // binary exponentiation keeps the two backends on the same operation
    // sequence, which matters for cross-backend agreement tests
    static double pow_uint(double base, unsigned n) {
        double result = 1.0;
        double b = base;
        while (n > 0) {
            if (n & 1u) result *= b;
            n >>= 1;
            if (n > 0) b *= b;
        }
        return result;
    }
    static double to_double(double v) { return v; }
    static std::string to_decimal_string(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.18g", v);
        return buf;
    }
};

template <>
struct Num<SignedDecimal> {
    static constexpr bool is_fixed_point = true;

    static SignedDecimal zero() { return SignedDecimal{}; }
    static SignedDecimal one() { return SignedDecimal::from_int(1); }
    static SignedDecimal from_int(long long v) { return SignedDecimal::from_int(v); }
    static SignedDecimal ratio(long long n, long long d) {
        return SignedDecimal::from_int(n) / SignedDecimal::from_int(d);
    }
    static SignedDecimal parse(std::string_view s) { return SignedDecimal::parse(s); }
    static SignedDecimal abs(const SignedDecimal& v) { return v.abs(); }
    static bool is_negative(const SignedDecimal& v) { return v.negative(); }
    static SignedDecimal sqrt(const SignedDecimal& v) { return silkswap::sqrt(v); }
    static SignedDecimal pow_uint(const SignedDecimal& base, unsigned n) {
        return silkswap::pow_uint(base, n);
    }
    static double to_double(const SignedDecimal& v) { return v.to_double(); }
    static std::string to_decimal_string(const SignedDecimal& v) { return v.to_string(); }
};

}  // namespace silkswap
