#include "qsa/recurrences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsa {

namespace {

constexpr std::int64_t kFullScanLimit = 1000;

bool is_insertion_basis(const ModelConfig& cfg, std::int64_t n) {
    return cfg.model == 5 && n <= cfg.n_b_max;
}

// Neumaier-compensated double accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + comp; }
};

} // namespace

DistributionTable::DistributionTable(ModelConfig cfg, TableOptions options)
    : cfg_(cfg), opt_(options) {
    cfg_.validate();
    f_.push_back(Distribution::delta(0));
    f_.push_back(Distribution::delta(0));
    scaled_.emplace_back(f_[0]);
    scaled_.emplace_back(f_[1]);
}

const Distribution& DistributionTable::at(std::int64_t n) {
    if (n < 0) throw std::domain_error("distribution index must be >= 0");
    extend_to(n);
    return f_[static_cast<std::size_t>(n)];
}

void DistributionTable::extend_to(std::int64_t n, const ProgressFn& progress) {
    for (std::int64_t k = computed_up_to() + 1; k <= n; ++k) {
        f_.push_back(is_insertion_basis(cfg_, k) ? next_insertion(k) : next_quicksort(k));
        scaled_.emplace_back(f_.back());
        if (progress) progress(k, n);
    }
}

Distribution DistributionTable::next_insertion(std::int64_t n) const {
    // Inserting the last element costs k comparisons for k < n-1 and n-1
    // comparisons in two of the n positions.
    std::vector<WideScalar> w(static_cast<std::size_t>(n - 1), WideScalar(1.0));
    w.back() = WideScalar(2.0);
    const Distribution step(1, std::move(w));
    return convolve(f_[static_cast<std::size_t>(n - 1)], step, opt_.threads);
}

Distribution DistributionTable::next_quicksort(std::int64_t n) const {
    const std::vector<double> p = pivot_kernel(cfg_, n);
    const SelectionCost cost = selection_cost(cfg_, n);

    std::vector<ConvolutionTerm> terms;
    WideScalar binom(1.0);
    const std::int64_t half = (n - 1) / 2;
    for (std::int64_t i = 0; i <= half; ++i) {
        const double pi = p[static_cast<std::size_t>(i)];
        if (pi > 0.0) {
            WideScalar w = binom * WideScalar(pi);
            if (2 * i < n - 1) w = w.ldexp(1);
            terms.push_back({w, &scaled_[static_cast<std::size_t>(i)], &scaled_[static_cast<std::size_t>(n - 1 - i)]});
        }
        binom = binom * WideScalar(static_cast<double>(n - 1 - i)) / WideScalar(static_cast<double>(i + 1));
    }
    const Distribution s = sum_of_convolutions(terms, opt_.threads);

    // Partitioning costs n-1 or n comparisons with equal total weight.
    const std::int64_t shift = opt_.selection == SelectionCostMode::FixedShift ? cost.fixed_shift : 0;
    const std::int64_t lo = s.lo() + shift + n - 1;
    std::vector<WideScalar> w(s.size() + 1);
    const auto sw = s.weights();
    for (std::size_t k = 0; k < w.size(); ++k) {
        WideScalar v;
        if (k < sw.size()) v += sw[k];
        if (k >= 1) v += sw[k - 1];
        w[k] = v.ldexp(-1);
    }
    Distribution f(lo, std::move(w));
    if (opt_.selection == SelectionCostMode::ExactConvolution && !(cost.exact_dist == Distribution::delta(0))) {
        f = convolve(cost.exact_dist, f, opt_.threads);
    }
    return f;
}

Distribution frequency_distribution(const ModelConfig& cfg, std::int64_t n, TableOptions options) {
    DistributionTable t(cfg, options);
    return t.at(n);
}

double harmonic(std::int64_t n) {
    double s = 0.0;
    for (std::int64_t k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
    return s;
}

InsertionClosedForm insertion_closed_forms(std::int64_t n) {
    if (n < 0) throw std::domain_error("n must be >= 0");
    const auto x = static_cast<double>(n);
    return {x * (x + 3.0) / 4.0 - harmonic(n), n * (n - 1) / 2};
}

std::vector<double> average_comparisons_table(const ModelConfig& cfg, std::int64_t n_max,
                                              SelectionCostMode mode) {
    cfg.validate();
    if (n_max < 0) throw std::domain_error("n must be >= 0");
    std::vector<double> c(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 1) + 1), 0.0);
    double h = 0.0;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        if (is_insertion_basis(cfg, n)) {
            if (h == 0.0) h = harmonic(n - 1);
            h += 1.0 / static_cast<double>(n);
            const auto x = static_cast<double>(n);
            c[static_cast<std::size_t>(n)] = x * (x + 3.0) / 4.0 - h;
            continue;
        }
        const std::vector<double> p = pivot_kernel(cfg, n);
        const SelectionCost cost = selection_cost(cfg, n);
        CompensatedSum s;
        for (std::int64_t i = 0; i < n; ++i) s.add(p[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)]);
        const double select = mode == SelectionCostMode::FixedShift ? static_cast<double>(cost.fixed_shift)
                                                                    : cost.mean;
        c[static_cast<std::size_t>(n)] =
            select + static_cast<double>(n) - 0.5 + 2.0 * s.value() / static_cast<double>(n);
    }
    c.resize(static_cast<std::size_t>(n_max + 1));
    return c;
}

double average_comparisons(const ModelConfig& cfg, std::int64_t n, SelectionCostMode mode) {
    return average_comparisons_table(cfg, n, mode).back();
}

std::vector<std::int64_t> max_comparisons_table(const ModelConfig& cfg, std::int64_t n_max) {
    cfg.validate();
    if (n_max < 0) throw std::domain_error("n must be >= 0");
    std::vector<std::int64_t> c(static_cast<std::size_t>(n_max + 1), 0);
    std::vector<std::int64_t> prefix_max(c.size(), 0);
    struct Range {
        std::int64_t s, e;
    };
    std::vector<Range> stack;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        if (is_insertion_basis(cfg, n)) {
            c[static_cast<std::size_t>(n)] = n * (n - 1) / 2;
        } else {
            const Selection sel = select_rule(cfg, n);
            const std::int64_t lo = sel.i_min;
            const std::int64_t hi = n - 1 - sel.i_min;
            auto at = [&](std::int64_t i) { return c[static_cast<std::size_t>(i)]; };
            auto g = [&](std::int64_t i) { return at(i) + at(n - 1 - i); };
            // g is symmetric, so only splits up to the middle matter, and
            // g(i) <= prefix_max[e] + prefix_max[n-1-s] on [s, e].
            std::int64_t best = g(lo);
            stack.assign(1, Range{lo, std::min(hi, (n - 1) / 2)});
            while (!stack.empty()) {
                const Range r = stack.back();
                stack.pop_back();
                if (r.s > r.e ||
                    prefix_max[static_cast<std::size_t>(r.e)] + prefix_max[static_cast<std::size_t>(n - 1 - r.s)] <= best) {
                    continue;
                }
                if (r.e - r.s < 8) {
                    for (std::int64_t i = r.s; i <= r.e; ++i) best = std::max(best, g(i));
                    continue;
                }
                const std::int64_t m = r.s + (r.e - r.s) / 2;
                stack.push_back({m + 1, r.e});
                stack.push_back({r.s, m});
            }
            if (n <= kFullScanLimit) {
                std::int64_t full = g(lo);
                for (std::int64_t i = lo + 1; i <= hi; ++i) full = std::max(full, g(i));
                if (full != best) throw std::logic_error("worst-case range bound missed the maximum");
            }
            c[static_cast<std::size_t>(n)] = sel.fixed_shift + n + best;
        }
        prefix_max[static_cast<std::size_t>(n)] =
            std::max(prefix_max[static_cast<std::size_t>(n - 1)], c[static_cast<std::size_t>(n)]);
    }
    return c;
}

std::int64_t max_comparisons(const ModelConfig& cfg, std::int64_t n) {
    return max_comparisons_table(cfg, n).back();
}

std::vector<std::int64_t> min_comparisons_table(const ModelConfig& cfg, std::int64_t n_max) {
    cfg.validate();
    if (n_max < 0) throw std::domain_error("n must be >= 0");
    std::vector<std::int64_t> c(static_cast<std::size_t>(n_max + 1), 0);
    for (std::int64_t n = 2; n <= n_max; ++n) {
        if (is_insertion_basis(cfg, n)) {
            c[static_cast<std::size_t>(n)] = n - 1;
            continue;
        }
        const Selection sel = select_rule(cfg, n);
        std::int64_t best = -1;
        for (std::int64_t i = sel.i_min; i <= n - 1 - sel.i_min; ++i) {
            const std::int64_t v = c[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(n - 1 - i)];
            if (best < 0 || v < best) best = v;
        }
        c[static_cast<std::size_t>(n)] = sel.fixed_shift + (n - 1) + best;
    }
    return c;
}

std::vector<std::int64_t> extreme_split_violations(const ModelConfig& cfg, std::int64_t n_max) {
    const std::vector<std::int64_t> c = max_comparisons_table(cfg, n_max);
    std::vector<std::int64_t> out;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        if (is_insertion_basis(cfg, n)) continue;
        const Selection sel = select_rule(cfg, n);
        const std::int64_t lo = sel.i_min;
        const std::int64_t hi = n - 1 - sel.i_min;
        auto g = [&](std::int64_t i) {
            return c[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(n - 1 - i)];
        };
        if (sel.fixed_shift + n + std::max(g(lo), g(hi)) != c[static_cast<std::size_t>(n)]) out.push_back(n);
    }
    return out;
}

} // namespace qsa
