#include "doctest.h"
#include "qsa/numerics.hpp"

#include <cmath>
#include <stdexcept>

using namespace qsa;

TEST_CASE("wide scalar construction normalizes the mantissa") {
    const WideScalar a(1024.0);
    CHECK(a.mantissa() == 1.0);
    CHECK(a.exponent() == 10);
    CHECK(WideScalar(0.0).is_zero());
    CHECK_THROWS_AS(WideScalar(-1.0), std::domain_error);
    CHECK_THROWS_AS(WideScalar(std::nan("")), std::domain_error);
}

TEST_CASE("addition and multiplication") {
    const WideScalar x(3.25);
    CHECK(WideScalar() + x == x);
    const WideScalar big = WideScalar::from_parts(1.0, 1000);
    const WideScalar sq = big * big;
    CHECK(sq.mantissa() == 1.0);
    CHECK(sq.exponent() == 2000);
    CHECK((WideScalar(6.0) / WideScalar(4.0)).to_double() == 1.5);
    CHECK(WideScalar::from_parts(1.0, 5000).to_double() == INFINITY);
    CHECK(WideScalar::from_parts(1.0, -5000).to_double() == 0.0);
}

TEST_CASE("integer conversions round once") {
    // Values between 2^53 and 2^62 take a separate path from small ones.
    for (int bits = 1; bits <= 64; ++bits) {
        const std::uint64_t v = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
        const WideScalar w = WideScalar::from_uint(v);
        CHECK(w.to_double() == static_cast<double>(v));
        CHECK(WideScalar::from_exact(ExactCount(v)) == w);
    }
    CHECK(WideScalar::from_uint(2756687646348288ull + 12345).to_double() == 2756687646360633.0);
    const ExactRational third(1, 3);
    CHECK(WideScalar::from_rational(third).to_double() == 1.0 / 3.0);
    const ExactRational tiny(36, ExactCount("23801874236813497600"));
    CHECK(WideScalar::from_rational(tiny).to_double() == doctest::Approx(36 / 23801874236813497600.0).epsilon(1e-15));
}

TEST_CASE("from_exact rounds to nearest with a sticky bit") {
    const ExactCount two53 = ExactCount(1) << 53;
    CHECK(WideScalar::from_exact(two53 + 1).to_double() == 9007199254740992.0);
    CHECK(WideScalar::from_exact((two53 << 20) + (ExactCount(1) << 20) + 1).to_double() ==
          std::ldexp(9007199254740994.0, 20));
}

TEST_CASE("comparison") {
    CHECK(WideScalar(2.0) < WideScalar(3.0));
    CHECK(WideScalar() < WideScalar(1e-300));
    CHECK(WideScalar::from_parts(1.0, 3000) > WideScalar::from_parts(1.9, 2999));
}

TEST_CASE("compensated summation") {
    WideSum s;
    s.add(WideScalar(1.0));
    for (int i = 0; i < 1000; ++i) s.add(WideScalar(1e-16));
    CHECK(s.value().to_double() == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
    WideSum t;
    t.add(WideScalar::from_parts(1.0, 4000));
    t.add(WideScalar::from_parts(1.0, 4000));
    CHECK(t.value() == WideScalar::from_parts(1.0, 4001));
    CHECK(WideSum().value().is_zero());
}

TEST_CASE("factorials") {
    CHECK(exact_factorial(0) == 1);
    CHECK(exact_factorial(10) == 3628800);
    CHECK(exact_factorial(20) == ExactCount("2432902008176640000"));
    double l = 0.0;
    for (int k = 2; k <= 500; ++k) l += std::log10(static_cast<double>(k));
    CHECK(ws_factorial(500).log10() == doctest::Approx(l).epsilon(1e-12));
    CHECK(exact_binomial(10, 3) == 120);
}

TEST_CASE("decimal rendering") {
    CHECK(ws_to_decimal(WideScalar(), 4) == "0");
    CHECK(ws_to_decimal(WideScalar::from_parts(1.0, 10), 4) == "1.024e3");
    CHECK(ws_to_decimal(ws_factorial(500), 4) == "1.220e1134");
    CHECK(ws_to_decimal(WideScalar(0.0735), 4) == "7.350e-2");
    CHECK(ws_to_decimal(WideScalar(9.9996), 4) == "1.000e1");
    CHECK(ws_to_decimal(WideScalar(0.125), 2) == "1.2e-1");
    CHECK(ws_to_decimal(WideScalar(6.25e-4), 10) == "6.250000000e-4");
    CHECK(ws_to_decimal(WideScalar::from_parts(1.0, -100000), 3) == "1.00e-30103");
    CHECK_THROWS_AS(ws_to_decimal(WideScalar(1.0), 0), std::invalid_argument);
}
