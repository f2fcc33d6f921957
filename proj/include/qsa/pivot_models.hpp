// Pivot selection models: where the pivot lands and what choosing it costs.
#pragma once

#include "qsa/distribution.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace qsa {

// Models 1..5: simple selection, median of three, median of three medians,
// recursive median of medians, and recursive median of medians with an
// insertion-sort basis for small subarrays.
struct ModelConfig {
    int model = 1;
    std::int64_t q_min = 5;
    std::int64_t n_b_max = 9;
    // When non-zero, models 3-5 use this sample size instead of the adaptive
    // rule wherever a median-of-medians pivot applies.
    std::int64_t forced_sample = 0;

    // Throws std::invalid_argument with a message naming the bad field.
    void validate() const;

    // "1", "2", "3", "4a" (q_min 10), "4b" (q_min 5), "5".
    static ModelConfig named(std::string_view name);
};

enum class SelectionRule { Simple, MedianOfThree, MedianOfMedians, InsertionBasis };

struct Selection {
    SelectionRule rule = SelectionRule::Simple;
    std::int64_t sample = 1;      // number of elements inspected
    std::int64_t i_min = 0;       // smallest feasible final pivot index
    std::int64_t fixed_shift = 0; // worst-case selection comparisons
};

// Which selection a model applies to a subarray of n >= 2 elements.
Selection select_rule(const ModelConfig& cfg, std::int64_t n);

// Largest power of three m with m * q_min <= n; requires n >= 9 * q_min.
std::int64_t sample_size(std::int64_t n, std::int64_t q_min);

// 2^k - 1 for m = 3^k.
std::int64_t i_min_of(std::int64_t m);

// p_n(0..n-1), normalized so that the values sum to n and mirrored so that
// p_n(i) == p_n(n-1-i) bit for bit. Throws std::domain_error for model 5 with
// n <= n_b_max, where no pivot is chosen.
std::vector<double> pivot_kernel(const ModelConfig& cfg, std::int64_t n);

// Polynomial kernel with zeros below i_min and above n-1-i_min.
std::vector<double> polynomial_kernel(std::int64_t n, std::int64_t i_min);

// Exact kernel of the median of three medians of nine sample elements.
std::vector<double> pivot_kernel_exact_mom(std::int64_t n);

struct SelectionCost {
    std::int64_t fixed_shift = 0;
    Distribution exact_dist; // probabilities, summing to 1
    double mean = 0.0;
    std::int64_t max = 0;
};

SelectionCost selection_cost(const ModelConfig& cfg, std::int64_t n);

} // namespace qsa
