// Extended-exponent non-negative scalars, a compensated accumulator for them,
// and exact integer helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace qsa {

using ExactCount = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

// A non-negative real stored as mantissa * 2^exponent with the mantissa in
// [1, 2), or the canonical zero (mantissa 0, exponent 0). Addition,
// multiplication and division are each rounded once, so every operation is
// correctly rounded to 53 bits.
class WideScalar {
public:
    constexpr WideScalar() = default;

    // Throws std::domain_error for negative, NaN or infinite input.
    explicit WideScalar(double value);

    // Normalizes an arbitrary (mantissa, exponent) pair; mantissa >= 0.
    static WideScalar from_parts(double mantissa, std::int64_t exponent);
    static WideScalar from_uint(std::uint64_t value);
    // Correctly rounded conversion of a non-negative exact integer.
    static WideScalar from_exact(const ExactCount& value);
    static WideScalar from_rational(const ExactRational& value);

    [[nodiscard]] double mantissa() const noexcept { return m_; }
    [[nodiscard]] std::int64_t exponent() const noexcept { return e_; }
    [[nodiscard]] bool is_zero() const noexcept { return m_ == 0.0; }

    // Saturates to 0 or +inf outside the double range.
    [[nodiscard]] double to_double() const noexcept;
    // -inf for zero.
    [[nodiscard]] double log10() const noexcept;
    [[nodiscard]] double log2() const noexcept;

    [[nodiscard]] WideScalar ldexp(std::int64_t k) const;

    WideScalar& operator+=(const WideScalar& rhs);
    WideScalar& operator*=(const WideScalar& rhs);
    WideScalar& operator/=(const WideScalar& rhs);

    friend WideScalar operator+(WideScalar a, const WideScalar& b) { return a += b; }
    friend WideScalar operator*(WideScalar a, const WideScalar& b) { return a *= b; }
    friend WideScalar operator/(WideScalar a, const WideScalar& b) { return a /= b; }

    friend bool operator==(const WideScalar& a, const WideScalar& b) noexcept {
        return a.m_ == b.m_ && a.e_ == b.e_;
    }
    friend std::partial_ordering operator<=>(const WideScalar& a, const WideScalar& b) noexcept;

private:
    double m_ = 0.0;
    std::int64_t e_ = 0;
};

// Neumaier-compensated sum of WideScalar terms. The running sum is kept as a
// double pair relative to a sliding binary scale; terms more than 2^1022
// below the running sum are dropped, which is far below double resolution.
class WideSum {
public:
    void add(const WideScalar& x) noexcept { add_raw(x.mantissa(), x.exponent()); }
    // Adds m * 2^e for any finite m >= 0 (m need not be normalized).
    void add_raw(double m, std::int64_t e) noexcept;
    [[nodiscard]] WideScalar value() const;

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
    std::int64_t scale_ = 0;
    bool empty_ = true;
};

// 2^k as a double for -1022 <= k <= 1023, built directly from the bit pattern.
double pow2_exact(int k) noexcept;

WideScalar ws_factorial(std::int64_t n);
ExactCount exact_factorial(std::int64_t n);
ExactCount exact_binomial(std::int64_t n, std::int64_t k);

// Scientific notation with `digits` significant digits, round half to even,
// e.g. "1.220e1134", "7.350e-2". Zero prints as "0". digits in [1, 17].
std::string ws_to_decimal(const WideScalar& x, int digits);

} // namespace qsa
