// Discrete non-negative distributions over integer comparison counts.
#pragma once

#include "qsa/numerics.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qsa {

// Dense weights over the contiguous support [lo, hi]. The first and last
// stored weights are always non-zero; the empty distribution has no weights.
class Distribution {
public:
    Distribution() = default;
    // Leading and trailing zero weights are trimmed.
    Distribution(std::int64_t lo, std::vector<WideScalar> weights);

    static Distribution delta(std::int64_t k, WideScalar weight = WideScalar(1.0));

    [[nodiscard]] bool empty() const noexcept { return w_.empty(); }
    [[nodiscard]] std::int64_t lo() const noexcept { return lo_; }
    [[nodiscard]] std::int64_t hi() const noexcept {
        return lo_ + static_cast<std::int64_t>(w_.size()) - 1;
    }
    [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
    [[nodiscard]] std::span<const WideScalar> weights() const noexcept { return w_; }
    // Zero outside the support.
    [[nodiscard]] WideScalar operator[](std::int64_t j) const noexcept;

    [[nodiscard]] WideScalar total() const;
    [[nodiscard]] Distribution shifted(std::int64_t k) const;
    [[nodiscard]] Distribution scaled(const WideScalar& c) const;

    // Writes "j,value" rows with 17 significant digits.
    void write_csv(std::ostream& os) const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::int64_t lo_ = 0;
    std::vector<WideScalar> w_;
};

// Direct (never FFT) convolution. `threads` splits the output range.
Distribution convolve(const Distribution& g, const Distribution& h, unsigned threads = 1);

// acc + c * g, pointwise.
Distribution mix(const Distribution& acc, const Distribution& g, const WideScalar& c);

// Moments of the normalized distribution. Throw std::domain_error when empty.
WideScalar mean(const Distribution& f);
WideScalar stddev_of(const Distribution& f);

// Sum of f(j) over j > threshold, accumulated from the top of the support.
WideScalar tail_weight(const Distribution& f, double threshold);

// Copy of a distribution as doubles in short blocks, each block scaled by
// its own power of two, so that convolution inner loops run on plain
// doubles. Blocks hold at most 64 entries spanning at most 2^400.
class ScaledDistribution {
public:
    ScaledDistribution() = default;
    explicit ScaledDistribution(const Distribution& f);

    [[nodiscard]] bool empty() const noexcept { return fwd_.empty(); }
    [[nodiscard]] std::int64_t lo() const noexcept { return lo_; }
    [[nodiscard]] std::int64_t hi() const noexcept {
        return lo_ + static_cast<std::int64_t>(fwd_.size()) - 1;
    }

    [[nodiscard]] std::span<const double> values() const noexcept { return fwd_; }
    [[nodiscard]] std::span<const double> reversed() const noexcept { return rev_; }
    // Block b covers indices [block_starts()[b], block_starts()[b+1]).
    [[nodiscard]] std::span<const std::int64_t> block_starts() const noexcept { return block_start_; }
    [[nodiscard]] std::span<const std::int64_t> block_exponents() const noexcept { return block_exp_; }

private:
    std::int64_t lo_ = 0;
    std::vector<double> fwd_;
    std::vector<double> rev_;
    std::vector<std::int64_t> block_start_; // plus a final sentinel = size
    std::vector<std::int64_t> block_exp_;
};

// One term of a weighted sum of convolutions: weight * (g * h).
struct ConvolutionTerm {
    WideScalar weight;
    const ScaledDistribution* g;
    const ScaledDistribution* h;
};

// Evaluates sum_k weight_k * (g_k * h_k) by gathering every output index
// independently, so the result does not depend on the number of threads.
Distribution sum_of_convolutions(std::span<const ConvolutionTerm> terms, unsigned threads = 1);

} // namespace qsa
