#include "qsa/distribution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace qsa {

Distribution::Distribution(std::int64_t lo, std::vector<WideScalar> weights)
    : lo_(lo), w_(std::move(weights)) {
    std::size_t first = 0;
    while (first < w_.size() && w_[first].is_zero()) ++first;
    std::size_t last = w_.size();
    while (last > first && w_[last - 1].is_zero()) --last;
    if (first == last) {
        lo_ = 0;
        w_.clear();
        return;
    }
    if (first > 0 || last < w_.size()) {
        w_ = std::vector<WideScalar>(w_.begin() + static_cast<std::ptrdiff_t>(first),
                                     w_.begin() + static_cast<std::ptrdiff_t>(last));
        lo_ += static_cast<std::int64_t>(first);
    }
}

Distribution Distribution::delta(std::int64_t k, WideScalar weight) {
    if (k < 0) throw std::invalid_argument("delta requires k >= 0");
    return Distribution(k, {weight});
}

WideScalar Distribution::operator[](std::int64_t j) const noexcept {
    if (w_.empty() || j < lo_ || j > hi()) return {};
    return w_[static_cast<std::size_t>(j - lo_)];
}

WideScalar Distribution::total() const {
    WideSum s;
    for (const auto& w : w_) s.add(w);
    return s.value();
}

Distribution Distribution::shifted(std::int64_t k) const {
    Distribution r = *this;
    if (!r.empty()) r.lo_ += k;
    return r;
}

Distribution Distribution::scaled(const WideScalar& c) const {
    std::vector<WideScalar> w(w_);
    for (auto& x : w) x *= c;
    return Distribution(lo_, std::move(w));
}

void Distribution::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
        os << (lo_ + static_cast<std::int64_t>(i)) << ',' << ws_to_decimal(w_[i], 17) << '\n';
    }
}

ScaledDistribution::ScaledDistribution(const Distribution& f) : lo_(f.lo()) {
    constexpr std::int64_t kMaxBlock = 64;
    constexpr std::int64_t kMaxRange = 400;
    const auto w = f.weights();
    const auto size = static_cast<std::int64_t>(w.size());
    fwd_.assign(w.size(), 0.0);
    std::int64_t i = 0;
    while (i < size) {
        const std::int64_t start = i;
        std::int64_t emax = std::numeric_limits<std::int64_t>::min();
        std::int64_t emin = std::numeric_limits<std::int64_t>::max();
        while (i < size && i - start < kMaxBlock) {
            const WideScalar& x = w[static_cast<std::size_t>(i)];
            if (!x.is_zero()) {
                const std::int64_t hi = std::max(emax, x.exponent());
                const std::int64_t lo = std::min(emin, x.exponent());
                if (hi - lo > kMaxRange) break;
                emax = hi;
                emin = lo;
            }
            ++i;
        }
        if (emax == std::numeric_limits<std::int64_t>::min()) emax = 0;
        block_start_.push_back(start);
        block_exp_.push_back(emax);
        for (std::int64_t j = start; j < i; ++j) {
            const WideScalar& x = w[static_cast<std::size_t>(j)];
            if (!x.is_zero()) {
                fwd_[static_cast<std::size_t>(j)] = x.mantissa() * pow2_exact(static_cast<int>(x.exponent() - emax));
            }
        }
    }
    block_start_.push_back(size);
    rev_.assign(fwd_.rbegin(), fwd_.rend());
}

namespace {

double dot(const double* x, const double* y, std::int64_t len) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::int64_t c = 0;
    for (; c + 4 <= len; c += 4) {
        s0 += x[c] * y[c];
        s1 += x[c + 1] * y[c + 1];
        s2 += x[c + 2] * y[c + 2];
        s3 += x[c + 3] * y[c + 3];
    }
    for (; c < len; ++c) s0 += x[c] * y[c];
    return (s0 + s1) + (s2 + s3);
}

std::size_t block_of(std::span<const std::int64_t> starts, std::int64_t index) {
    const auto it = std::upper_bound(starts.begin(), starts.end(), index);
    return static_cast<std::size_t>(it - starts.begin()) - 1;
}

// sum_k g(k) h(t-k) over the overlapping supports.
WideScalar convolution_at(const ScaledDistribution& g, const ScaledDistribution& h, std::int64_t t) {
    const std::int64_t k0 = std::max(g.lo(), t - h.hi());
    const std::int64_t k1 = std::min(g.hi(), t - h.lo());
    if (k0 > k1) return {};
    const double* gv = g.values().data();
    const double* hr = h.reversed().data();
    const auto gs = g.block_starts();
    const auto hs = h.block_starts();
    const auto ge = g.block_exponents();
    const auto he = h.block_exponents();
    const std::int64_t hlast = h.hi() - h.lo();
    std::int64_t a = k0 - g.lo();
    std::int64_t b = t - k0 - h.lo();
    std::int64_t remaining = k1 - k0 + 1;
    std::size_t gb = block_of(gs, a);
    std::size_t hb = block_of(hs, b);
    WideSum sum;
    while (remaining > 0) {
        const std::int64_t len = std::min({remaining, gs[gb + 1] - a, b - hs[hb] + 1});
        const double s = dot(gv + a, hr + (hlast - b), len);
        if (s > 0.0) sum.add_raw(s, ge[gb] + he[hb]);
        a += len;
        b -= len;
        remaining -= len;
        if (remaining > 0) {
            if (a == gs[gb + 1]) ++gb;
            if (b < hs[hb]) --hb;
        }
    }
    return sum.value();
}

} // namespace

Distribution sum_of_convolutions(std::span<const ConvolutionTerm> terms, unsigned threads) {
    std::int64_t out_lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t out_hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& t : terms) {
        if (t.weight.is_zero() || t.g->empty() || t.h->empty()) continue;
        out_lo = std::min(out_lo, t.g->lo() + t.h->lo());
        out_hi = std::max(out_hi, t.g->hi() + t.h->hi());
    }
    if (out_lo > out_hi) return {};

    const auto count = static_cast<std::size_t>(out_hi - out_lo + 1);
    std::vector<WideScalar> out(count);

    auto compute = [&](std::size_t idx) {
        const std::int64_t t = out_lo + static_cast<std::int64_t>(idx);
        WideSum outer;
        for (const auto& term : terms) {
            if (term.weight.is_zero() || term.g->empty() || term.h->empty()) continue;
            const WideScalar v = convolution_at(*term.g, *term.h, t);
            if (!v.is_zero()) outer.add(v * term.weight);
        }
        out[idx] = outer.value();
    };

    constexpr std::size_t kChunk = 16;
    const auto chunks = static_cast<unsigned>((count + kChunk - 1) / kChunk);
    const unsigned workers = std::max(1u, std::min(threads, chunks));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) compute(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= count) return;
                const std::size_t end = std::min(count, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) compute(i);
            }
        };
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }
    return Distribution(out_lo, std::move(out));
}

Distribution convolve(const Distribution& g, const Distribution& h, unsigned threads) {
    const ScaledDistribution sg(g);
    const ScaledDistribution sh(h);
    const ConvolutionTerm term{WideScalar(1.0), &sg, &sh};
    return sum_of_convolutions(std::span<const ConvolutionTerm>(&term, 1), threads);
}

Distribution mix(const Distribution& acc, const Distribution& g, const WideScalar& c) {
    if (g.empty() || c.is_zero()) return acc;
    if (acc.empty()) return g.scaled(c);
    const std::int64_t lo = std::min(acc.lo(), g.lo());
    const std::int64_t hi = std::max(acc.hi(), g.hi());
    std::vector<WideScalar> w(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t j = lo; j <= hi; ++j) {
        w[static_cast<std::size_t>(j - lo)] = acc[j] + g[j] * c;
    }
    return Distribution(lo, std::move(w));
}

WideScalar mean(const Distribution& f) {
    if (f.empty()) throw std::domain_error("mean of an empty distribution");
    WideSum num;
    const auto w = f.weights();
    for (std::size_t i = 1; i < w.size(); ++i) {
        num.add(w[i] * WideScalar(static_cast<double>(i)));
    }
    return num.value() / f.total() + WideScalar(static_cast<double>(f.lo()));
}

WideScalar stddev_of(const Distribution& f) {
    if (f.empty()) throw std::domain_error("stddev of an empty distribution");
    const WideScalar total = f.total();
    const double mu = mean(f).to_double();
    WideSum ss;
    const auto w = f.weights();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = static_cast<double>(f.lo() + static_cast<std::int64_t>(i)) - mu;
        ss.add(w[i] * WideScalar(d * d));
    }
    const WideScalar var = ss.value() / total;
    return WideScalar(std::sqrt(var.to_double()));
}

WideScalar tail_weight(const Distribution& f, double threshold) {
    if (f.empty()) return {};
    const double first_real = std::floor(threshold) + 1.0;
    if (first_real > static_cast<double>(f.hi())) return {};
    const std::int64_t first =
        std::max(f.lo(), first_real < static_cast<double>(f.lo())
                             ? f.lo()
                             : static_cast<std::int64_t>(first_real));
    WideSum s;
    const auto w = f.weights();
    for (std::int64_t j = f.hi(); j >= first; --j) s.add(w[static_cast<std::size_t>(j - f.lo())]);
    return s.value();
}

} // namespace qsa
