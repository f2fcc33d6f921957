#include "doctest.h"
#include "qsa/analysis.hpp"

#include <cmath>
#include <stdexcept>

using namespace qsa;

TEST_CASE("bad-case probabilities") {
    DistributionTable t(ModelConfig::named("1"));
    CHECK(bad_case_probability(t, 100, 1.25).to_double() == doctest::Approx(1.23646e-2).epsilon(1e-5));
    CHECK_THROWS_AS(bad_case_probability(t, 100, 1.0), std::domain_error);
    const double top = static_cast<double>(t.at(30).hi()) / mean(t.at(30)).to_double();
    CHECK(bad_case_probability(t, 30, top + 1e-9).is_zero());
    CHECK(bad_case_probability(t, 30, 1.0 + 1e-9).to_double() < 1.0);
    WideScalar prev(1.0);
    for (double tau = 1.05; tau < 2.0; tau += 0.05) {
        const WideScalar p = bad_case_probability(t, 50, tau);
        CHECK_FALSE(prev < p);
        prev = p;
    }
}

TEST_CASE("probability ratios") {
    DistributionTable t(ModelConfig::named("1"));
    CHECK(probability_ratio(t, 1.25, 40, 20) > 0.0);
    CHECK_THROWS_AS(probability_ratio(t, 100.0, 40, 20), std::domain_error);
}

TEST_CASE("expected waiting times") {
    CHECK(expected_time_to_event(WideScalar(1.0), 1.0) == "0.001 s");
    CHECK(expected_time_to_event(WideScalar(8.88e-6), 1.0) == "1.9 m");
    CHECK(expected_time_to_event(WideScalar(), 1.0) == "never");
    CHECK_THROWS_AS(expected_time_to_event(WideScalar(1.0), 0.0), std::domain_error);
}

TEST_CASE("standard deviation closed form") {
    CHECK(std::fabs(iliopoulos_sigma(2)) < 1e-9);
    CHECK(iliopoulos_sigma(100) == doctest::Approx(59.4833).epsilon(1e-5));
    DistributionTable t(ModelConfig::named("1"));
    const double sd = stddev_of(t.at(100)).to_double();
    CHECK(sd == doctest::Approx(59.7259).epsilon(1e-5));
}

TEST_CASE("worst-case bound report") {
    const std::vector<std::int64_t> maxima = {0, 0, 1, 5, 9};
    const WorstCaseReport r = worst_case_bound_check(maxima, 1.0, 2.0);
    CHECK(r.argmax_n == 4);
    CHECK(r.max_bound_ratio == doctest::Approx(9.0 / 16.0));
    CHECK(r.leading_coefficient == doctest::Approx(9.0 / 16.0));
}
