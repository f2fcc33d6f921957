// Recurrences for the number of comparisons: full frequency distributions,
// averages, maxima and minima.
#pragma once

#include "qsa/distribution.hpp"
#include "qsa/pivot_models.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qsa {

// How pivot selection comparisons enter the recurrences.
enum class SelectionCostMode {
    FixedShift,       // always the worst-case selection cost
    ExactConvolution, // the exact selection-cost distribution (distributions) or its mean (averages)
};

struct TableOptions {
    SelectionCostMode selection = SelectionCostMode::FixedShift;
    unsigned threads = 1;
};

// Called after each f_n is finished with (n, target n).
using ProgressFn = std::function<void(std::int64_t, std::int64_t)>;

// Memoized frequency distributions f_0, f_1, ... for one model. f_n(j) is
// the number of the n! input permutations that need exactly j comparisons.
class DistributionTable {
public:
    explicit DistributionTable(ModelConfig cfg, TableOptions options = {});

    [[nodiscard]] const ModelConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const TableOptions& options() const noexcept { return opt_; }
    [[nodiscard]] std::int64_t computed_up_to() const noexcept {
        return static_cast<std::int64_t>(f_.size()) - 1;
    }

    void extend_to(std::int64_t n, const ProgressFn& progress = {});
    // Computes missing entries on demand.
    const Distribution& at(std::int64_t n);

private:
    Distribution next_quicksort(std::int64_t n) const;
    Distribution next_insertion(std::int64_t n) const;

    ModelConfig cfg_;
    TableOptions opt_;
    std::vector<Distribution> f_;
    std::vector<ScaledDistribution> scaled_;
};

Distribution frequency_distribution(const ModelConfig& cfg, std::int64_t n, TableOptions options = {});

struct InsertionClosedForm {
    double average = 0.0;
    std::int64_t max = 0;
};

InsertionClosedForm insertion_closed_forms(std::int64_t n);
double harmonic(std::int64_t n);

// Average comparisons for every size 0..n_max.
std::vector<double> average_comparisons_table(const ModelConfig& cfg, std::int64_t n_max,
                                              SelectionCostMode mode = SelectionCostMode::FixedShift);
double average_comparisons(const ModelConfig& cfg, std::int64_t n,
                           SelectionCostMode mode = SelectionCostMode::FixedShift);

// Exact worst and best comparison counts for every size 0..n_max. The worst
// case is found by branch and bound over split ranges, bounding each range
// with the running maximum of the table, and is compared with a full scan up
// to size 1000 (std::logic_error on disagreement).
std::vector<std::int64_t> max_comparisons_table(const ModelConfig& cfg, std::int64_t n_max);
std::int64_t max_comparisons(const ModelConfig& cfg, std::int64_t n);
std::vector<std::int64_t> min_comparisons_table(const ModelConfig& cfg, std::int64_t n_max);

// Sizes n <= n_max at which the worst split is not one of the two extreme
// feasible splits (computed by full scan).
std::vector<std::int64_t> extreme_split_violations(const ModelConfig& cfg, std::int64_t n_max);

} // namespace qsa
