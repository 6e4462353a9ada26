#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace silkswap {

using uint256 = boost::multiprecision::uint256_t;
using uint512 = boost::multiprecision::uint512_t;

/// Signed fixed-point decimal with 18 fractional digits.
///
/// Values are stored as an unsigned 256-bit magnitude equal to the value
/// scaled by 10^18, paired with a sign flag. Multiplication and division
/// rescale through 512-bit intermediates and truncate toward zero; any
/// result whose magnitude does not fit 256 bits raises std::overflow_error
/// instead of wrapping. Zero is canonically non-negative.
class SignedDecimal {
public:
    static constexpr int fraction_digits = 18;

    /// 10^18, the scaling factor between stored magnitude and value.
    static const uint256& scale();

    /// Largest positive value (magnitude 2^256 - 1).
    static SignedDecimal max_value();

    constexpr SignedDecimal() = default;

    static SignedDecimal from_raw(uint256 magnitude, bool negative = false);
    static SignedDecimal from_int(long long v);

    /// Parses "[-]digits[.digits]" with at most 18 fractional digits.
    /// Rejects anything else with std::invalid_argument; integer parts
    /// beyond the 256-bit range raise std::overflow_error.
    static SignedDecimal parse(std::string_view text);

    /// Nearest representable value of a finite double.
    static SignedDecimal from_double(double v);

    const uint256& magnitude() const { return magnitude_; }
    bool negative() const { return negative_; }
    bool is_zero() const { return magnitude_ == 0; }

    double to_double() const;

    /// Canonical form: sign, integer part, '.', all 18 fractional digits.
    /// parse(to_string(v)) == v for every value.
    std::string to_string() const;

    SignedDecimal operator-() const;
    SignedDecimal abs() const;

    friend SignedDecimal operator+(const SignedDecimal& a, const SignedDecimal& b);
    friend SignedDecimal operator-(const SignedDecimal& a, const SignedDecimal& b);
    friend SignedDecimal operator*(const SignedDecimal& a, const SignedDecimal& b);
    friend SignedDecimal operator/(const SignedDecimal& a, const SignedDecimal& b);

    friend bool operator==(const SignedDecimal& a, const SignedDecimal& b);
    friend bool operator!=(const SignedDecimal& a, const SignedDecimal& b) { return !(a == b); }
    friend bool operator<(const SignedDecimal& a, const SignedDecimal& b);
    friend bool operator>(const SignedDecimal& a, const SignedDecimal& b) { return b < a; }
    friend bool operator<=(const SignedDecimal& a, const SignedDecimal& b) { return !(b < a); }
    friend bool operator>=(const SignedDecimal& a, const SignedDecimal& b) { return !(a < b); }

    SignedDecimal& operator+=(const SignedDecimal& o) { return *this = *this + o; }
    SignedDecimal& operator-=(const SignedDecimal& o) { return *this = *this - o; }
    SignedDecimal& operator*=(const SignedDecimal& o) { return *this = *this * o; }
    SignedDecimal& operator/=(const SignedDecimal& o) { return *this = *this / o; }

private:
    uint256 magnitude_{0};
    bool negative_{false};
};

/// base^n by binary exponentiation; base^0 == 1.
SignedDecimal pow_uint(const SignedDecimal& base, unsigned n);

/// Floor square root: the result r satisfies r^2 <= a < (r + 10^-18)^2.
/// Computed by integer Babylonian iteration over the scaled magnitude.
/// Negative input raises std::domain_error.
SignedDecimal sqrt(const SignedDecimal& a);

}  // namespace silkswap
