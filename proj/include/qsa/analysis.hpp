// Quantities derived from the distribution tables.
#pragma once

#include "qsa/distribution.hpp"
#include "qsa/recurrences.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsa {

// Probability that sorting a random permutation of n elements needs more
// than tau times the average number of comparisons. Requires tau > 1.
WideScalar bad_case_probability(DistributionTable& table, std::int64_t n, double tau);

// p(n_num, tau) / p(n_den, tau); std::domain_error when the denominator is 0.
double probability_ratio(DistributionTable& table, double tau, std::int64_t n_num = 500,
                         std::int64_t n_den = 250);

// Expected waiting time until a bad case occurs when one sort starts every
// interval_ms milliseconds, e.g. "0.46 s", "1.9 m", "90.5 d", "6.2e41 a".
// Returns "never" when p is zero.
std::string expected_time_to_event(const WideScalar& p, double interval_ms);

// Closed-form standard deviation of the comparison count of simple-pivot
// Quicksort. Throws std::domain_error on a negative radicand.
double iliopoulos_sigma(std::int64_t n);
double harmonic2(std::int64_t n);

struct WorstCaseReport {
    // max over 2 <= n <= n_max of C_max(n) / (coefficient * n^exponent)
    double max_bound_ratio = 0.0;
    std::int64_t argmax_n = 0;
    // C_max(n_max) / n_max^2
    double leading_coefficient = 0.0;
};

WorstCaseReport worst_case_bound_check(const std::vector<std::int64_t>& maxima, double coefficient = 3.8,
                                       double exponent = 1.37);

} // namespace qsa
