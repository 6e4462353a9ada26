#include "silkswap/decimal.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace silkswap {

namespace {

const uint256 kScale = [] {
    uint256 s = 1;
    for (int i = 0; i < SignedDecimal::fraction_digits; ++i) s *= 10;
    return s;
}();

const uint512 kScale512 = uint512(kScale);
const uint512 kMaxMagnitude512 = uint512((std::numeric_limits<uint256>::max)());

uint256 checked_narrow(const uint512& v, const char* op) {
    if (v > kMaxMagnitude512) {
        throw std::overflow_error(std::string("SignedDecimal ") + op + ": magnitude exceeds 256 bits");
    }
    return uint256(v);
}

}  // namespace

const uint256& SignedDecimal::scale() { return kScale; }

SignedDecimal SignedDecimal::max_value() {
    return from_raw((std::numeric_limits<uint256>::max)(), false);
}

SignedDecimal SignedDecimal::from_raw(uint256 magnitude, bool negative) {
    SignedDecimal d;
    d.magnitude_ = std::move(magnitude);
    d.negative_ = negative && d.magnitude_ != 0;
    return d;
}

SignedDecimal SignedDecimal::from_int(long long v) {
    const bool neg = v < 0;
    // avoid overflow negating LLONG_MIN
    const std::uint64_t mag = neg ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    return from_raw(uint256(mag) * kScale, neg);
}

SignedDecimal SignedDecimal::parse(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
    }
    const std::size_t int_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t int_len = i - int_begin;

    std::size_t frac_begin = 0, frac_len = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        frac_begin = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        frac_len = i - frac_begin;
        if (frac_len == 0) throw std::invalid_argument("SignedDecimal::parse: no digits after '.'");
        if (frac_len > static_cast<std::size_t>(fraction_digits)) {
            throw std::invalid_argument("SignedDecimal::parse: more than 18 fractional digits");
        }
    }
    if (int_len == 0 && frac_len == 0) throw std::invalid_argument("SignedDecimal::parse: no digits");
    if (i != text.size()) throw std::invalid_argument("SignedDecimal::parse: trailing characters");

    uint512 mag = 0;
    for (std::size_t k = int_begin; k < int_begin + int_len; ++k) {
        mag = mag * 10 + (text[k] - '0');
        if (mag > kMaxMagnitude512) throw std::overflow_error("SignedDecimal::parse: integer part too large");
    }
    mag *= kScale512;
    uint512 frac = 0;
    for (std::size_t k = frac_begin; k < frac_begin + frac_len; ++k) frac = frac * 10 + (text[k] - '0');
    for (std::size_t k = frac_len; k < static_cast<std::size_t>(fraction_digits); ++k) frac *= 10;
    mag += frac;
    return from_raw(checked_narrow(mag, "parse"), neg);
}

SignedDecimal SignedDecimal::from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("SignedDecimal::from_double: non-finite value");
    // Print with 18 fractional digits and reuse the exact string path.
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.18f", v);
    return parse(buf);
}

double SignedDecimal::to_double() const {
    const double m = magnitude_.convert_to<double>() / 1e18;
    return negative_ ? -m : m;
}

std::string SignedDecimal::to_string() const {
    const uint256 ip = magnitude_ / kScale;
    const uint256 fp = magnitude_ % kScale;
    std::string frac = fp.convert_to<std::string>();
    frac.insert(0, static_cast<std::size_t>(fraction_digits) - frac.size(), '0');
    std::string out;
    if (negative_) out += '-';
    out += ip.convert_to<std::string>();
    out += '.';
    out += frac;
    return out;
}

SignedDecimal SignedDecimal::operator-() const { return from_raw(magnitude_, !negative_); }

SignedDecimal SignedDecimal::abs() const { return from_raw(magnitude_, false); }

SignedDecimal operator+(const SignedDecimal& a, const SignedDecimal& b) {
    if (a.negative_ == b.negative_) {
        const uint512 sum = uint512(a.magnitude_) + uint512(b.magnitude_);
        return SignedDecimal::from_raw(checked_narrow(sum, "add"), a.negative_);
    }
    // opposite signs: subtract the smaller magnitude from the larger
    if (a.magnitude_ >= b.magnitude_) {
        return SignedDecimal::from_raw(a.magnitude_ - b.magnitude_, a.negative_);
    }
    return SignedDecimal::from_raw(b.magnitude_ - a.magnitude_, b.negative_);
}

SignedDecimal operator-(const SignedDecimal& a, const SignedDecimal& b) { return a + (-b); }

SignedDecimal operator*(const SignedDecimal& a, const SignedDecimal& b) {
    const uint512 prod = uint512(a.magnitude_) * uint512(b.magnitude_);
    const uint512 scaled = prod / kScale512;  // truncation toward zero
    return SignedDecimal::from_raw(checked_narrow(scaled, "mul"), a.negative_ != b.negative_);
}

SignedDecimal operator/(const SignedDecimal& a, const SignedDecimal& b) {
    if (b.magnitude_ == 0) throw std::domain_error("SignedDecimal: division by zero");
    const uint512 num = uint512(a.magnitude_) * kScale512;
    const uint512 q = num / uint512(b.magnitude_);  // truncation toward zero
    return SignedDecimal::from_raw(checked_narrow(q, "div"), a.negative_ != b.negative_);
}

bool operator==(const SignedDecimal& a, const SignedDecimal& b) {
    return a.magnitude_ == b.magnitude_ && a.negative_ == b.negative_;
}

bool operator<(const SignedDecimal& a, const SignedDecimal& b) {
    if (a.negative_ != b.negative_) return a.negative_;
    if (a.negative_) return b.magnitude_ < a.magnitude_;
    return a.magnitude_ < b.magnitude_;
}

SignedDecimal pow_uint(const SignedDecimal& base, unsigned n) {
    SignedDecimal result = SignedDecimal::from_int(1);
    SignedDecimal b = base;
    while (n > 0) {
        if (n & 1u) result = result * b;
        n >>= 1;
        if (n > 0) b = b * b;
    }
    return result;
}

SignedDecimal sqrt(const SignedDecimal& a) {
    if (a.negative()) throw std::domain_error("SignedDecimal: sqrt of negative value");
    if (a.is_zero()) return SignedDecimal{};

    // floor(sqrt(value) * 10^18) == isqrt(magnitude * 10^18)
    const uint512 n = uint512(a.magnitude()) * kScale512;

    // initial guess: 2^ceil(bits/2) >= sqrt(n)
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    uint512 x = uint512(1) << ((bits + 1) / 2);
    uint512 next = (x + n / x) / 2;
    while (next < x) {
        x = next;
        next = (x + n / x) / 2;
    }
    return SignedDecimal::from_raw(uint256(x), false);
}

}  // namespace silkswap
