#include "qsa/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace qsa {

namespace {

constexpr std::int64_t kExponentLimit = std::int64_t{1} << 62;
constexpr std::int64_t kExactDecimalLimit = 20000;

void check_exponent(std::int64_t e) {
    assert(e > -kExponentLimit && e < kExponentLimit);
    (void)e;
}

} // namespace

double pow2_exact(int k) noexcept {
    assert(k >= -1022 && k <= 1023);
    return std::bit_cast<double>(static_cast<std::uint64_t>(k + 1023) << 52);
}

WideScalar::WideScalar(double value) {
    if (!(value >= 0.0) || std::isinf(value)) {
        throw std::domain_error("WideScalar requires a finite non-negative value");
    }
    *this = from_parts(value, 0);
}

WideScalar WideScalar::from_parts(double mantissa, std::int64_t exponent) {
    WideScalar r;
    if (mantissa == 0.0) return r;
    if (!(mantissa > 0.0) || std::isinf(mantissa)) {
        throw std::domain_error("WideScalar requires a finite non-negative value");
    }
    int k = 0;
    const double f = std::frexp(mantissa, &k);
    r.m_ = f * 2.0;
    r.e_ = exponent + (k - 1);
    check_exponent(r.e_);
    return r;
}

WideScalar WideScalar::from_uint(std::uint64_t value) {
    if (value == 0) return {};
    return from_parts(static_cast<double>(value), 0);
}

WideScalar WideScalar::from_exact(const ExactCount& value) {
    if (value < 0) throw std::domain_error("WideScalar requires a non-negative value");
    if (value == 0) return {};
    const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(value)) + 1;
    if (bits <= 62) return from_uint(value.convert_to<std::uint64_t>());
    const std::int64_t shift = bits - 62;
    ExactCount top = value >> shift;
    auto t = top.convert_to<std::uint64_t>();
    if ((top << shift) != value) t |= 1u;
    return from_parts(static_cast<double>(t), shift);
}

WideScalar WideScalar::from_rational(const ExactRational& value) {
    return from_exact(boost::multiprecision::numerator(value)) /
           from_exact(boost::multiprecision::denominator(value));
}

double WideScalar::to_double() const noexcept {
    if (m_ == 0.0) return 0.0;
    if (e_ > 1100) return std::numeric_limits<double>::infinity();
    if (e_ < -1100) return 0.0;
    return std::ldexp(m_, static_cast<int>(e_));
}

double WideScalar::log2() const noexcept {
    if (m_ == 0.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(e_) + std::log2(m_);
}

double WideScalar::log10() const noexcept {
    if (m_ == 0.0) return -std::numeric_limits<double>::infinity();
    const long double l = static_cast<long double>(e_) * 0.301029995663981195213738894724493027L +
                          std::log10(static_cast<long double>(m_));
    return static_cast<double>(l);
}

WideScalar WideScalar::ldexp(std::int64_t k) const {
    if (m_ == 0.0) return *this;
    WideScalar r = *this;
    r.e_ += k;
    check_exponent(r.e_);
    return r;
}

WideScalar& WideScalar::operator+=(const WideScalar& rhs) {
    if (rhs.m_ == 0.0) return *this;
    if (m_ == 0.0) return *this = rhs;
    const WideScalar& big = (e_ >= rhs.e_) ? *this : rhs;
    const WideScalar& small = (e_ >= rhs.e_) ? rhs : *this;
    const std::int64_t d = big.e_ - small.e_;
    if (d > 64) return *this = big;
    const double sum = big.m_ + std::ldexp(small.m_, -static_cast<int>(d));
    return *this = from_parts(sum, big.e_);
}

WideScalar& WideScalar::operator*=(const WideScalar& rhs) {
    if (m_ == 0.0 || rhs.m_ == 0.0) return *this = WideScalar{};
    return *this = from_parts(m_ * rhs.m_, e_ + rhs.e_);
}

WideScalar& WideScalar::operator/=(const WideScalar& rhs) {
    if (rhs.m_ == 0.0) throw std::domain_error("WideScalar division by zero");
    if (m_ == 0.0) return *this;
    return *this = from_parts(m_ / rhs.m_, e_ - rhs.e_);
}

std::partial_ordering operator<=>(const WideScalar& a, const WideScalar& b) noexcept {
    if (a.m_ == 0.0 || b.m_ == 0.0) return a.m_ <=> b.m_;
    if (a.e_ != b.e_) return a.e_ <=> b.e_;
    return a.m_ <=> b.m_;
}

void WideSum::add_raw(double m, std::int64_t e) noexcept {
    if (m == 0.0) return;
    if (empty_) {
        hi_ = m;
        scale_ = e;
        empty_ = false;
        return;
    }
    std::int64_t d = e - scale_;
    if (d > 512) {
        const std::int64_t down = -d;
        hi_ = down < -1022 ? 0.0 : hi_ * pow2_exact(static_cast<int>(down));
        lo_ = down < -1022 ? 0.0 : lo_ * pow2_exact(static_cast<int>(down));
        scale_ = e;
        d = 0;
    } else if (d < -1022) {
        return;
    }
    const double v = m * pow2_exact(static_cast<int>(d));
    const double t = hi_ + v;
    if (std::fabs(hi_) >= std::fabs(v)) {
        lo_ += (hi_ - t) + v;
    } else {
        lo_ += (v - t) + hi_;
    }
    hi_ = t;
}

WideScalar WideSum::value() const {
    if (empty_) return {};
    const double s = hi_ + lo_;
    if (s <= 0.0) return {};
    return WideScalar::from_parts(s, scale_);
}

WideScalar ws_factorial(std::int64_t n) {
    if (n < 0) throw std::domain_error("factorial of a negative number");
    constexpr std::uint64_t kChunkLimit = std::uint64_t{1} << 53;
    WideScalar result(1.0);
    std::uint64_t chunk = 1;
    for (std::int64_t i = 2; i <= n; ++i) {
        const auto k = static_cast<std::uint64_t>(i);
        if (chunk > kChunkLimit / k) {
            result *= WideScalar::from_uint(chunk);
            chunk = k;
        } else {
            chunk *= k;
        }
    }
    return result * WideScalar::from_uint(chunk);
}

ExactCount exact_factorial(std::int64_t n) {
    if (n < 0) throw std::domain_error("factorial of a negative number");
    ExactCount r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

ExactCount exact_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    ExactCount r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

namespace {

// Rounds the decimal digit string `s` (value s * 10^(exp10 - len + 1)) to
// `digits` significant digits, half to even.
std::string format_digits(std::string s, std::int64_t exp10, int digits) {
    if (static_cast<int>(s.size()) > digits) {
        const char next = s[digits];
        bool rest_nonzero = false;
        for (std::size_t i = digits + 1; i < s.size(); ++i) {
            if (s[i] != '0') {
                rest_nonzero = true;
                break;
            }
        }
        s.resize(digits);
        bool up = false;
        if (next > '5') up = true;
        else if (next == '5') up = rest_nonzero || ((s.back() - '0') % 2 == 1);
        if (up) {
            int i = digits - 1;
            while (i >= 0 && s[i] == '9') s[i--] = '0';
            if (i >= 0) {
                ++s[i];
            } else {
                s.insert(s.begin(), '1');
                s.pop_back();
                ++exp10;
            }
        }
    }
    while (static_cast<int>(s.size()) < digits) s.push_back('0');
    std::string out(1, s[0]);
    if (digits > 1) {
        out.push_back('.');
        out.append(s, 1, std::string::npos);
    }
    out.push_back('e');
    out += std::to_string(exp10);
    return out;
}

} // namespace

std::string ws_to_decimal(const WideScalar& x, int digits) {
    if (digits < 1 || digits > 17) throw std::invalid_argument("digits must be in [1, 17]");
    if (x.is_zero()) return "0";
    const std::int64_t k = x.exponent() - 52;
    if (k >= -kExactDecimalLimit && k <= kExactDecimalLimit) {
        const auto mant = static_cast<std::uint64_t>(std::ldexp(x.mantissa(), 52));
        ExactCount n = mant;
        std::int64_t scale10 = 0;
        if (k >= 0) {
            n <<= k;
        } else {
            n *= boost::multiprecision::pow(ExactCount(5), static_cast<unsigned>(-k));
            scale10 = k;
        }
        std::string s = n.str();
        const auto exp10 = static_cast<std::int64_t>(s.size()) - 1 + scale10;
        return format_digits(std::move(s), exp10, digits);
    }
    const long double l = static_cast<long double>(x.exponent()) *
                              0.301029995663981195213738894724493027L +
                          std::log10(static_cast<long double>(x.mantissa()));
    auto exp10 = static_cast<std::int64_t>(std::floor(l));
    const long double mant = std::pow(10.0L, l - static_cast<long double>(exp10));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Lf", digits + 2, mant * 1.0L);
    std::string s;
    for (const char* p = buf; *p; ++p) {
        if (*p >= '0' && *p <= '9') s.push_back(*p);
    }
    if (s.size() > 1 && buf[0] == '1' && buf[1] == '0') {
        ++exp10;
        s.erase(s.size() - 1);
    }
    return format_digits(std::move(s), exp10, digits);
}

} // namespace qsa
