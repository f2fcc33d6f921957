// Instrumented sorting algorithms. Every element comparison goes through a
// probe object, which either counts (Counting) or compiles away (Plain).
// Movements count assignments with at least one array element operand; a
// swap through a temporary counts 3.
#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace qsa {

struct SortStats {
    std::uint64_t comparisons = 0;
    std::uint64_t movements = 0;
    int max_stack_depth = 0;
};

struct NaturalOrder {
    template <class T>
    bool lt(const T& a, const T& b) const { return a < b; }
    template <class T>
    bool le(const T& a, const T& b) const { return !(b < a); }
    template <class T>
    bool eq(const T& a, const T& b) const { return !(a < b) && !(b < a); }
};

template <class Order = NaturalOrder>
class Counting {
public:
    explicit Counting(SortStats& stats, Order order = {}) : stats_(&stats), order_(order) {}
    template <class T>
    bool lt(const T& a, const T& b) { ++stats_->comparisons; return order_.lt(a, b); }
    template <class T>
    bool le(const T& a, const T& b) { ++stats_->comparisons; return order_.le(a, b); }
    template <class T>
    bool eq(const T& a, const T& b) { ++stats_->comparisons; return order_.eq(a, b); }
    void moved(std::uint64_t k = 1) { stats_->movements += k; }
    void depth(int d) { stats_->max_stack_depth = std::max(stats_->max_stack_depth, d); }

private:
    SortStats* stats_;
    Order order_;
};

template <class Order = NaturalOrder>
class Plain {
public:
    explicit Plain(Order order = {}) : order_(order) {}
    template <class T>
    bool lt(const T& a, const T& b) { return order_.lt(a, b); }
    template <class T>
    bool le(const T& a, const T& b) { return order_.le(a, b); }
    template <class T>
    bool eq(const T& a, const T& b) { return order_.eq(a, b); }
    void moved(std::uint64_t = 1) {}
    void depth(int) {}

private:
    Order order_;
};

enum class PartitionScheme { SweepSimple, SweepExtended, ClassicCollision, ClassicCollisionExtended, NewCollision };

// Subarray 1 is [0, lo_end), subarray 2 is [hi_begin, n); everything in
// between equals the pivot.
struct PartitionResult {
    std::size_t lo_end = 0;
    std::size_t hi_begin = 0;
};

template <class T, class Probe>
PartitionResult partition(PartitionScheme scheme, std::span<T> a, std::size_t ipart, Probe& pr) {
    using idx = std::ptrdiff_t;
    const auto n = static_cast<idx>(a.size());
    if (n == 0) return {0, 0};
    if (ipart >= a.size()) throw std::out_of_range("pivot index out of range");
    if (n == 1) return {0, 1};
    T partval = a[ipart];
    pr.moved();
    switch (scheme) {
    case PartitionScheme::NewCollision: {
        idx i = 0;
        idx j = n - 1;
        a[ipart] = a[j];
        a[j--] = partval;
        pr.moved(2);
        for (;;) {
            while (pr.lt(a[i], partval)) i++;
            while (i < j && pr.lt(partval, a[j])) j--;
            if (j <= i) break;
            std::swap(a[i++], a[j--]);
            pr.moved(3);
        }
        a[n - 1] = a[i];
        a[i] = partval;
        pr.moved(2);
        return {static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)};
    }
    case PartitionScheme::SweepSimple: {
        a[ipart] = a[0];
        pr.moved();
        idx i = 0;
        for (idx j = 1; j < n; j++) {
            if (pr.lt(a[j], partval)) {
                std::swap(a[++i], a[j]);
                pr.moved(3);
            }
        }
        a[0] = a[i];
        a[i] = partval;
        pr.moved(2);
        return {static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)};
    }
    case PartitionScheme::SweepExtended: {
        idx j = 0;
        for (idx i = 0; i < n; i++) {
            if (pr.lt(a[i], partval)) {
                std::swap(a[j++], a[i]);
                pr.moved(3);
            }
        }
        idx i = j;
        for (idx k = i; k < n; k++) {
            if (pr.eq(a[k], partval)) {
                std::swap(a[i++], a[k]);
                pr.moved(3);
            }
        }
        return {static_cast<std::size_t>(j), static_cast<std::size_t>(i)};
    }
    case PartitionScheme::ClassicCollision: {
        idx i = 0;
        idx j = n - 1;
        do {
            while (pr.lt(a[i], partval)) i++;
            while (pr.lt(partval, a[j])) j--;
            if (i <= j) {
                std::swap(a[i++], a[j--]);
                pr.moved(3);
            }
        } while (i <= j);
        return {static_cast<std::size_t>(j + 1), static_cast<std::size_t>(i)};
    }
    case PartitionScheme::ClassicCollisionExtended: {
        idx j = 0;
        idx k = n - 1;
        for (;;) {
            while (pr.lt(a[j], partval)) j++;
            while (j < k && pr.le(partval, a[k])) k--;
            if (k <= j) break;
            std::swap(a[j++], a[k--]);
            pr.moved(3);
        }
        k = j;
        idx i = n - 1;
        for (;;) {
            while (k <= i && pr.eq(partval, a[k])) k++;
            while (k <= i && pr.lt(partval, a[i])) i--;
            if (i <= k) break;
            std::swap(a[k++], a[i--]);
            pr.moved(3);
        }
        return {static_cast<std::size_t>(j), static_cast<std::size_t>(i + 1)};
    }
    }
    throw std::logic_error("unknown partition scheme");
}

// Index of the median of a[i], a[j], a[k].
template <class T, class Probe>
std::size_t median_of_three(const T* a, std::size_t i, std::size_t j, std::size_t k, Probe& pr) {
    return pr.le(a[i], a[j]) ? (pr.le(a[j], a[k]) ? j : pr.lt(a[i], a[k]) ? k : i)
                             : (pr.le(a[k], a[j]) ? j : pr.lt(a[k], a[i]) ? k : i);
}

// Recursive median of three medians of the m = 3^k >= 9 sample elements
// a[0], a[inc], ..., a[(m-1) inc]; returns an index into a.
template <class T, class Probe>
std::size_t medofmed(std::size_t m, std::size_t inc, const T* a, Probe& pr) {
    std::size_t i0, i1, i2;
    if (m == 9) {
        const std::size_t inc3 = inc * 3;
        std::size_t i = 0, j = inc, k = j + inc;
        i0 = median_of_three(a, i, j, k, pr);
        i += inc3; j += inc3; k += inc3;
        i1 = median_of_three(a, i, j, k, pr);
        i += inc3; j += inc3; k += inc3;
        i2 = median_of_three(a, i, j, k, pr);
    } else {
        if (m < 9 || m % 3 != 0) throw std::invalid_argument("sample size must be a power of 3 and >= 9");
        m /= 3;
        i0 = medofmed(m, inc, a, pr);
        i1 = medofmed(m, inc, a + m * inc, pr) + m * inc;
        i2 = medofmed(m, inc, a + m * inc * 2, pr) + m * inc * 2;
    }
    return median_of_three(a, i0, i1, i2, pr);
}

template <class T, class Probe>
std::size_t medofmed(std::size_t m, std::size_t inc, std::span<const T> a, Probe& pr) {
    if (m < 9) throw std::invalid_argument("sample size must be a power of 3 and >= 9");
    if ((m - 1) * inc + 1 > a.size()) throw std::out_of_range("sample exceeds array");
    return medofmed(m, inc, a.data(), pr);
}

enum class PivotRule {
    Middle,                // element at left + nt/2
    MedianOfThree,         // positions nt/4, nt/2, nt/2 + nt/4
    MedianOfThreeMedians,  // nine-element sample from 9 q_min elements on
    RecursiveMedianOfMedians,
};

struct QuicksortOptions {
    PivotRule rule = PivotRule::RecursiveMedianOfMedians;
    bool threeway = true;
    std::size_t q_min = 5;
    // Subarrays of at most this many elements are insertion sorted; 0 disables.
    std::size_t n_basis_max = 15;

    // Sorter matching analysis model 1..5.
    static QuicksortOptions for_model(int model, bool threeway = false, std::size_t q_min = 5,
                                      std::size_t n_basis_max = 9) {
        QuicksortOptions o;
        o.threeway = threeway;
        o.q_min = q_min;
        o.n_basis_max = 0;
        switch (model) {
        case 1: o.rule = PivotRule::Middle; break;
        case 2: o.rule = PivotRule::MedianOfThree; break;
        case 3: o.rule = PivotRule::MedianOfThreeMedians; break;
        case 4: o.rule = PivotRule::RecursiveMedianOfMedians; break;
        case 5:
            o.rule = PivotRule::RecursiveMedianOfMedians;
            o.n_basis_max = n_basis_max;
            break;
        default: throw std::invalid_argument("model must be 1..5");
        }
        return o;
    }
};

template <class T, class Probe>
void insertion_sort_range(T* a, std::size_t left, std::size_t right, Probe& pr) {
    std::size_t j, k;
    for (std::size_t i = left + 1; i <= right; i++) {
        if (pr.lt(a[i], a[j = i - 1])) {
            T temp = a[i];
            a[i] = a[j];
            pr.moved(2);
            while (j > left && pr.lt(temp, a[k = j - 1])) {
                a[j] = a[k];
                pr.moved();
                j = k;
            }
            a[j] = temp;
            pr.moved();
        }
    }
}

template <class T, class Probe>
void insertion_sort(std::span<T> a, Probe& pr) {
    if (a.size() > 1) insertion_sort_range(a.data(), 0, a.size() - 1, pr);
}

template <class T, class Probe>
std::size_t choose_pivot(const T* a, std::size_t left, std::size_t nt, const QuicksortOptions& opt, Probe& pr) {
    if (nt < 3 || opt.rule == PivotRule::Middle) return left + nt / 2;
    if (opt.rule == PivotRule::MedianOfThree || nt < opt.q_min * 9) {
        const std::size_t i = left + nt / 4;
        const std::size_t k = left + nt / 2;
        const std::size_t j = k + nt / 4;
        return median_of_three(a, i, k, j, pr);
    }
    std::size_t m = 9;
    if (opt.rule == PivotRule::RecursiveMedianOfMedians) {
        const std::size_t nc = nt / (opt.q_min * 9);
        std::size_t mt;
        m = 1;
        while ((mt = m * 3) <= nc) m = mt;
        m *= 9;
    }
    return medofmed(m, (nt - 1) / (m - 1), a + left, pr) + left;
}

template <class T, class Probe>
void quicksort(std::span<T> data, const QuicksortOptions& opt, Probe& pr) {
    if (opt.q_min < 1) throw std::invalid_argument("q_min must be >= 1");
    enum { STACKSIZE = sizeof(std::size_t) * CHAR_BIT * 2 };
    T* a = data.data();
    const std::size_t n = data.size();
    int top;
    std::size_t left, right, nt, i, j, k, ipartel;
    std::size_t stack[STACKSIZE];

    if (n <= 1) {
        top = 0;
    } else {
        stack[0] = 0;
        stack[1] = n - 1;
        top = 2;
        pr.depth(1);
    }
    while (top > 0) {
        right = stack[--top];
        left = stack[--top];
        while (left < right) {
            nt = right - left + 1;
            if (nt <= opt.n_basis_max) {
                insertion_sort_range(a, left, right, pr);
                left = right;
                continue;
            }
            ipartel = choose_pivot(a, left, nt, opt, pr);
            T partval = a[ipartel];
            pr.moved();
            if (!opt.threeway) {
                a[ipartel] = a[right];
                a[right] = partval;
                pr.moved(2);
                i = left;
                j = right - 1;
                for (;;) {
                    while (pr.lt(a[i], partval)) i++;
                    while (i < j && pr.lt(partval, a[j])) j--;
                    if (j <= i) break;
                    std::swap(a[i++], a[j--]);
                    pr.moved(3);
                }
                a[right] = a[i];
                a[i] = partval;
                pr.moved(2);
                j = i;
            } else {
                j = left;
                k = right;
                for (;;) {
                    while (pr.lt(a[j], partval)) j++;
                    while (j < k && pr.le(partval, a[k])) k--;
                    if (k <= j) break;
                    std::swap(a[j++], a[k--]);
                    pr.moved(3);
                }
                k = j;
                i = right;
                for (;;) {
                    while (k <= i && pr.eq(partval, a[k])) k++;
                    while (k <= i && pr.lt(partval, a[i])) i--;
                    if (i <= k) break;
                    std::swap(a[k++], a[i--]);
                    pr.moved(3);
                }
            }
            if (top + 2 > STACKSIZE) throw std::logic_error("quicksort stack overflow");
            if (j - left <= right - i) {
                stack[top++] = i + 1;
                stack[top++] = right;
                right = (j == 0) ? j : j - 1;
            } else {
                stack[top++] = left;
                stack[top++] = (j == 0) ? j : j - 1;
                left = i + 1;
            }
            pr.depth(top / 2 + 1);
        }
    }
}

enum class HeapVariant { Classic, BottomUp };

namespace detail {

template <class T, class Probe>
void sift_down_classic(T* a, std::size_t root, std::size_t end, Probe& pr) {
    T x = a[root];
    pr.moved();
    for (;;) {
        std::size_t child = 2 * root + 1;
        if (child >= end) break;
        if (child + 1 < end && pr.lt(a[child], a[child + 1])) child++;
        if (!pr.lt(x, a[child])) break;
        a[root] = a[child];
        pr.moved();
        root = child;
    }
    a[root] = x;
    pr.moved();
}

template <class T, class Probe>
void sift_down_bottom_up(T* a, std::size_t root, std::size_t end, Probe& pr) {
    std::size_t j = root;
    while (2 * j + 2 < end) j = pr.lt(a[2 * j + 1], a[2 * j + 2]) ? 2 * j + 2 : 2 * j + 1;
    if (2 * j + 1 < end) j = 2 * j + 1;
    while (j > root && pr.lt(a[j], a[root])) j = (j - 1) / 2;
    if (j == root) return;
    T x = a[j];
    a[j] = a[root];
    pr.moved(2);
    while (j > root) {
        j = (j - 1) / 2;
        std::swap(x, a[j]);
        pr.moved(2);
    }
}

} // namespace detail

template <class T, class Probe>
void heapsort(std::span<T> data, HeapVariant variant, Probe& pr) {
    T* a = data.data();
    const std::size_t n = data.size();
    if (n < 2) return;
    auto sift = [&](std::size_t root, std::size_t end) {
        if (variant == HeapVariant::Classic) detail::sift_down_classic(a, root, end, pr);
        else detail::sift_down_bottom_up(a, root, end, pr);
    };
    for (std::size_t i = n / 2; i-- > 0;) sift(i, n);
    for (std::size_t end = n - 1; end > 0; --end) {
        std::swap(a[0], a[end]);
        pr.moved(3);
        sift(0, end);
    }
}

} // namespace qsa
