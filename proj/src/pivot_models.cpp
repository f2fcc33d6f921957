#include "qsa/pivot_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsa {

namespace {

bool is_power_of_three(std::int64_t m) {
    if (m < 1) return false;
    while (m % 3 == 0) m /= 3;
    return m == 1;
}

std::vector<double> mirrored(std::vector<double> p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n / 2; ++i) p[n - 1 - i] = p[i];
    return p;
}

} // namespace

void ModelConfig::validate() const {
    if (model < 1 || model > 5) throw std::invalid_argument("model must be 1..5");
    if (q_min < 1) throw std::invalid_argument("q_min must be >= 1");
    if (n_b_max < 1) throw std::invalid_argument("n_b_max must be >= 1");
    if (forced_sample != 0 && (forced_sample < 9 || !is_power_of_three(forced_sample))) {
        throw std::invalid_argument("forced sample must be a power of 3 and at least 9");
    }
}

ModelConfig ModelConfig::named(std::string_view name) {
    ModelConfig c;
    if (name == "1") c.model = 1;
    else if (name == "2") c.model = 2;
    else if (name == "3") c.model = 3;
    else if (name == "4a") { c.model = 4; c.q_min = 10; }
    else if (name == "4b" || name == "4") c.model = 4;
    else if (name == "5") c.model = 5;
    else throw std::invalid_argument("unknown model name: " + std::string(name));
    return c;
}

std::int64_t sample_size(std::int64_t n, std::int64_t q_min) {
    if (q_min < 1) throw std::invalid_argument("q_min must be >= 1");
    if (n < 9 * q_min) throw std::domain_error("sample_size requires n >= 9 * q_min");
    const std::int64_t limit = n / q_min;
    std::int64_t m = 9;
    while (m * 3 <= limit) m *= 3;
    return m;
}

std::int64_t i_min_of(std::int64_t m) {
    if (m < 3 || !is_power_of_three(m)) throw std::invalid_argument("sample size must be a power of 3");
    std::int64_t r = 1;
    for (std::int64_t x = m; x > 1; x /= 3) r *= 2;
    return r - 1;
}

Selection select_rule(const ModelConfig& cfg, std::int64_t n) {
    cfg.validate();
    if (n < 2) throw std::domain_error("pivot selection requires n >= 2");
    if (cfg.model == 5 && n <= cfg.n_b_max) return {SelectionRule::InsertionBasis, 0, 0, 0};
    if (n == 2 || cfg.model == 1) return {SelectionRule::Simple, 1, 0, 0};
    if (cfg.model == 2 || n < 9 * cfg.q_min) return {SelectionRule::MedianOfThree, 3, 1, 3};
    std::int64_t m = cfg.model == 3 ? 9 : sample_size(n, cfg.q_min);
    if (cfg.forced_sample != 0) m = cfg.forced_sample;
    if (m > n) throw std::domain_error("sample size exceeds subarray size");
    return {SelectionRule::MedianOfMedians, m, i_min_of(m), 3 * ((m - 1) / 2)};
}

std::vector<double> polynomial_kernel(std::int64_t n, std::int64_t i_min) {
    if (i_min < 0 || n < 2 * i_min + 1) throw std::domain_error("kernel has no feasible pivot index");
    const auto nn = static_cast<std::size_t>(n);
    std::vector<long double> q(nn, 0.0L);
    const std::int64_t mid = (n - 1) / 2;
    q[static_cast<std::size_t>(mid)] = 1.0L;
    for (std::int64_t i = mid; i > i_min; --i) {
        const long double num = static_cast<long double>(i - i_min) * static_cast<long double>(n - i);
        const long double den = static_cast<long double>(i) * static_cast<long double>(n - i - i_min);
        q[static_cast<std::size_t>(i - 1)] = q[static_cast<std::size_t>(i)] * num / den;
    }
    long double half = 0.0L;
    long double comp = 0.0L;
    for (std::int64_t i = i_min; i <= mid; ++i) {
        const long double y = q[static_cast<std::size_t>(i)] - comp;
        const long double t = half + y;
        comp = (t - half) - y;
        half = t;
    }
    const long double total = 2.0L * half - ((n % 2 == 1) ? q[static_cast<std::size_t>(mid)] : 0.0L);
    std::vector<double> p(nn, 0.0);
    for (std::int64_t i = 0; i <= mid; ++i) {
        p[static_cast<std::size_t>(i)] =
            static_cast<double>(static_cast<long double>(n) * q[static_cast<std::size_t>(i)] / total);
    }
    return mirrored(std::move(p));
}

std::vector<double> pivot_kernel(const ModelConfig& cfg, std::int64_t n) {
    const Selection sel = select_rule(cfg, n);
    const auto nn = static_cast<std::size_t>(n);
    switch (sel.rule) {
    case SelectionRule::InsertionBasis:
        throw std::domain_error("insertion-sort basis has no pivot kernel");
    case SelectionRule::Simple:
        return std::vector<double>(nn, 1.0);
    case SelectionRule::MedianOfThree: {
        std::vector<double> p(nn, 0.0);
        const double a = 6.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
        for (std::int64_t i = 0; i <= (n - 1) / 2; ++i) {
            p[static_cast<std::size_t>(i)] = a * static_cast<double>(i) * static_cast<double>(n - 1 - i);
        }
        return mirrored(std::move(p));
    }
    case SelectionRule::MedianOfMedians:
        return polynomial_kernel(n, sel.i_min);
    }
    throw std::logic_error("unreachable selection rule");
}

std::vector<double> pivot_kernel_exact_mom(std::int64_t n) {
    if (n < 9) throw std::domain_error("exact median-of-medians kernel requires n >= 9");
    auto falling = [](std::int64_t x, int k) {
        ExactCount r = 1;
        for (int j = 0; j < k; ++j) r *= (x - j);
        return r;
    };
    const ExactCount denom = falling(n - 1, 8);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i <= (n - 1) / 2; ++i) {
        const std::int64_t r = n - 1 - i;
        const ExactCount poly = 3 * falling(i, 3) * falling(r, 5) + 10 * falling(i, 4) * falling(r, 4) +
                                3 * falling(i, 5) * falling(r, 3);
        if (poly <= 0) continue;
        const ExactRational v(36 * poly, denom);
        p[static_cast<std::size_t>(i)] = WideScalar::from_rational(v).to_double();
    }
    return mirrored(std::move(p));
}

SelectionCost selection_cost(const ModelConfig& cfg, std::int64_t n) {
    const Selection sel = select_rule(cfg, n);
    SelectionCost c;
    c.fixed_shift = sel.fixed_shift;
    c.max = sel.fixed_shift;
    switch (sel.rule) {
    case SelectionRule::Simple:
    case SelectionRule::InsertionBasis:
        c.exact_dist = Distribution::delta(0);
        c.mean = 0.0;
        break;
    case SelectionRule::MedianOfThree:
        c.exact_dist = Distribution(2, {WideScalar(1.0) / WideScalar(3.0), WideScalar(2.0) / WideScalar(3.0)});
        c.mean = 8.0 / 3.0;
        break;
    case SelectionRule::MedianOfMedians: {
        const std::int64_t t = (sel.sample - 1) / 2;
        WideScalar three_t(1.0);
        for (std::int64_t k = 0; k < t; ++k) three_t *= WideScalar(3.0);
        std::vector<WideScalar> w(static_cast<std::size_t>(t + 1));
        WideScalar binom(1.0);
        for (std::int64_t k = 0; k <= t; ++k) {
            // C(t, k) * 2^k / 3^t: k Bernoulli trials needing the third comparison.
            w[static_cast<std::size_t>(k)] = (binom / three_t).ldexp(k);
            binom = binom * WideScalar(static_cast<double>(t - k)) / WideScalar(static_cast<double>(k + 1));
        }
        c.exact_dist = Distribution(2 * t, std::move(w));
        c.mean = 8.0 * static_cast<double>(t) / 3.0;
        break;
    }
    }
    return c;
}

} // namespace qsa
