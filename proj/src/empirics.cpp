#include "qsa/empirics.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace qsa {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (stream * 0xD1B54A32D192ED03ULL);
    std::uint32_t words[8];
    for (int i = 0; i < 8; i += 2) {
        const std::uint64_t x = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(x);
        words[i + 1] = static_cast<std::uint32_t>(x >> 32);
    }
    std::seed_seq seq(std::begin(words), std::end(words));
    engine_.seed(seq);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be > 0");
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double RandomStream::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

void check_enumeration_size(std::int64_t n, std::int64_t max) {
    if (n < 2 || n > max) {
        throw std::domain_error("enumeration requires 2 <= n <= " + std::to_string(max));
    }
}

} // namespace

PartitionSummary enumerate_partition_stats(PartitionScheme scheme, std::int64_t n) {
    check_enumeration_size(n, 11);
    std::vector<std::int32_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::int32_t> work(perm.size());
    std::uint64_t runs = 0, cmp_total = 0, mov_total = 0;
    std::map<std::uint64_t, std::uint64_t> hist;
    do {
        work = perm;
        SortStats st;
        Counting<> pr(st);
        partition(scheme, std::span<std::int32_t>(work), static_cast<std::size_t>(n / 2), pr);
        ++runs;
        cmp_total += st.comparisons;
        mov_total += st.movements;
        ++hist[st.comparisons];
    } while (std::next_permutation(perm.begin(), perm.end()));

    PartitionSummary s;
    s.n = n;
    s.permutations = runs;
    s.comparisons_avg = ExactRational(ExactCount(cmp_total), ExactCount(runs));
    s.movements_avg = ExactRational(ExactCount(mov_total), ExactCount(runs));
    for (const auto& [k, v] : hist) s.comparison_histogram[k] = v;
    return s;
}

std::map<std::uint64_t, ExactCount> enumerate_sort_histogram(const QuicksortOptions& opt, std::int64_t n) {
    check_enumeration_size(n, 10);
    std::vector<std::int32_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::int32_t> work(perm.size());
    std::map<std::uint64_t, std::uint64_t> hist;
    do {
        work = perm;
        SortStats st;
        Counting<> pr(st);
        quicksort(std::span<std::int32_t>(work), opt, pr);
        ++hist[st.comparisons];
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::map<std::uint64_t, ExactCount> out;
    for (const auto& [k, v] : hist) out[k] = v;
    return out;
}

std::vector<std::uint64_t> simulate_pivot_positions(const ModelConfig& cfg, std::int64_t n, std::int64_t trials,
                                                    std::int64_t bin, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("trials must be >= 1");
    if (bin < 1) throw std::domain_error("bin width must be >= 1");
    const Selection sel = select_rule(cfg, n);
    if (sel.rule == SelectionRule::InsertionBasis) throw std::domain_error("no pivot is chosen for this size");
    const auto nn = static_cast<std::size_t>(n);
    std::vector<std::uint64_t> hist(static_cast<std::size_t>((n + bin - 1) / bin), 0);
    std::vector<std::int32_t> a(nn);
    RandomStream rng(seed);
    Plain<> pr;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::iota(a.begin(), a.end(), 0);
        for (std::size_t i = nn - 1; i > 0; --i) std::swap(a[i], a[rng.below(i + 1)]);
        std::size_t ipart = nn / 2;
        switch (sel.rule) {
        case SelectionRule::Simple: break;
        case SelectionRule::MedianOfThree:
            ipart = median_of_three(a.data(), nn / 4, nn / 2, nn / 2 + nn / 4, pr);
            break;
        case SelectionRule::MedianOfMedians: {
            const auto m = static_cast<std::size_t>(sel.sample);
            ipart = medofmed(m, (nn - 1) / (m - 1), a.data(), pr);
            break;
        }
        case SelectionRule::InsertionBasis: break;
        }
        const std::int32_t pivot = a[ipart];
        const PartitionResult r = partition(PartitionScheme::NewCollision, std::span<std::int32_t>(a), ipart, pr);
        if (a[r.lo_end] != pivot || r.lo_end != static_cast<std::size_t>(pivot)) {
            throw std::logic_error("pivot did not reach its rank");
        }
        ++hist[r.lo_end / static_cast<std::size_t>(bin)];
    }
    return hist;
}

std::string SorterSpec::name() const {
    switch (kind) {
    case SorterKind::HeapsortClassic: return "heapsort-classic";
    case SorterKind::HeapsortBottomUp: return "heapsort-bottom-up";
    case SorterKind::InsertionSort: return "insertion";
    case SorterKind::Quicksort: break;
    }
    int model = 5;
    switch (quick.rule) {
    case PivotRule::Middle: model = 1; break;
    case PivotRule::MedianOfThree: model = 2; break;
    case PivotRule::MedianOfThreeMedians: model = 3; break;
    case PivotRule::RecursiveMedianOfMedians: model = quick.n_basis_max == 0 ? 4 : 5; break;
    }
    return "quicksort-m" + std::to_string(model) + (quick.threeway ? "-3way" : "-2way");
}

namespace {

// Keys start as "gas" (larger than everything solid); a gas key becomes
// solid, with the next small value, when the sorter forces a decision.
class GasAdversary {
public:
    explicit GasAdversary(std::int32_t n) : val_(static_cast<std::size_t>(n), n - 1), gas_(n - 1) {}

    int compare(std::int32_t x, std::int32_t y) {
        auto& vx = val_[static_cast<std::size_t>(x)];
        auto& vy = val_[static_cast<std::size_t>(y)];
        if (vx == gas_ && vy == gas_) {
            if (x == candidate_) vx = nsolid_++;
            else vy = nsolid_++;
        }
        if (vx == gas_) candidate_ = x;
        else if (vy == gas_) candidate_ = y;
        return (vx > vy) - (vx < vy);
    }

    [[nodiscard]] const std::vector<std::int32_t>& values() const { return val_; }

private:
    std::vector<std::int32_t> val_;
    std::int32_t gas_;
    std::int32_t nsolid_ = 0;
    std::int32_t candidate_ = 0;
};

struct AdversaryOrder {
    GasAdversary* adv;
    bool lt(std::int32_t a, std::int32_t b) const { return adv->compare(a, b) < 0; }
    bool le(std::int32_t a, std::int32_t b) const { return adv->compare(a, b) <= 0; }
    bool eq(std::int32_t a, std::int32_t b) const { return adv->compare(a, b) == 0; }
};

template <class Probe>
void dispatch(const SorterSpec& s, std::span<std::int32_t> a, Probe& pr) {
    switch (s.kind) {
    case SorterKind::Quicksort: quicksort(a, s.quick, pr); break;
    case SorterKind::HeapsortClassic: heapsort(a, HeapVariant::Classic, pr); break;
    case SorterKind::HeapsortBottomUp: heapsort(a, HeapVariant::BottomUp, pr); break;
    case SorterKind::InsertionSort: insertion_sort(a, pr); break;
    }
}

} // namespace

AdversaryResult killer_adversary(const SorterSpec& sorter, std::int64_t n) {
    if (n < 0 || n > INT32_MAX) throw std::domain_error("n out of range");
    AdversaryResult r;
    if (n == 0) return r;
    GasAdversary adv(static_cast<std::int32_t>(n));
    std::vector<std::int32_t> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    SortStats st;
    Counting<AdversaryOrder> pr(st, AdversaryOrder{&adv});
    dispatch(sorter, std::span<std::int32_t>(ids), pr);
    r.comparisons = st.comparisons;
    r.input = adv.values();

    std::vector<char> seen(ids.size(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto id = static_cast<std::size_t>(ids[i]);
        if (id >= ids.size() || seen[id]) throw std::logic_error("sorter lost or duplicated an element");
        seen[id] = 1;
        if (i > 0 && r.input[static_cast<std::size_t>(ids[i - 1])] > r.input[id]) {
            throw std::logic_error("sorter bypassed the comparator");
        }
    }

    std::vector<std::int32_t> replay = r.input;
    SortStats rs;
    Counting<> rp(rs);
    dispatch(sorter, std::span<std::int32_t>(replay), rp);
    r.replay_comparisons = rs.comparisons;
    if (r.replay_comparisons != r.comparisons) throw std::logic_error("adversary replay mismatch");
    if (!std::is_sorted(replay.begin(), replay.end())) throw std::logic_error("replay did not sort");
    return r;
}

DatasetKind parse_dataset_kind(std::string_view name) {
    if (name == "random") return DatasetKind::Random;
    if (name == "increasing") return DatasetKind::Increasing;
    if (name == "decreasing") return DatasetKind::Decreasing;
    if (name == "equal") return DatasetKind::Equal;
    if (name == "organpipe") return DatasetKind::OrganPipe;
    if (name == "random01") return DatasetKind::TwoValuedRandom;
    throw std::invalid_argument("unknown generator: " + std::string(name));
}

std::string_view dataset_kind_name(DatasetKind kind) {
    switch (kind) {
    case DatasetKind::Random: return "random";
    case DatasetKind::Increasing: return "increasing";
    case DatasetKind::Decreasing: return "decreasing";
    case DatasetKind::Equal: return "equal";
    case DatasetKind::OrganPipe: return "organpipe";
    case DatasetKind::TwoValuedRandom: return "random01";
    }
    return "unknown";
}

std::vector<std::int32_t> generate_dataset(const DatasetSpec& spec) {
    if (spec.n < 0) throw std::domain_error("n must be >= 0");
    const auto n = static_cast<std::size_t>(spec.n);
    std::vector<std::int32_t> a(n);
    RandomStream rng(spec.seed);
    for (std::size_t i = 0; i < n; ++i) {
        switch (spec.kind) {
        case DatasetKind::Random: a[i] = static_cast<std::int32_t>(rng.below(std::uint64_t{1} << 31)); break;
        case DatasetKind::Increasing: a[i] = static_cast<std::int32_t>(i); break;
        case DatasetKind::Decreasing: a[i] = static_cast<std::int32_t>(n - 1 - i); break;
        case DatasetKind::Equal: a[i] = 42; break;
        case DatasetKind::OrganPipe: a[i] = static_cast<std::int32_t>(std::min(i, n - 1 - i)); break;
        case DatasetKind::TwoValuedRandom: a[i] = static_cast<std::int32_t>(rng.below(2)); break;
        }
    }
    return a;
}

std::vector<double> generate_dataset_double(const DatasetSpec& spec) {
    if (spec.kind == DatasetKind::Random) {
        std::vector<double> a(static_cast<std::size_t>(spec.n));
        RandomStream rng(spec.seed);
        for (auto& x : a) x = rng.unit();
        return a;
    }
    const auto keys = generate_dataset(spec);
    return {keys.begin(), keys.end()};
}

std::vector<Record> generate_dataset_record(const DatasetSpec& spec) {
    const auto keys = generate_dataset(spec);
    std::vector<Record> a(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        a[i].key = keys[i];
        for (int k = 0; k < 7; ++k) a[i].data[k] = static_cast<std::int32_t>(i) + k;
    }
    return a;
}

namespace {

template <class T>
BenchmarkResult benchmark_typed(const SorterSpec& sorter, const std::vector<T>& input, int repeats) {
    BenchmarkResult r;
    {
        std::vector<T> work = input;
        const SortStats st = run_sorter(sorter, std::span<T>(work));
        r.comparisons = st.comparisons;
        r.movements = st.movements;
    }
    std::vector<double> times;
    for (int k = 0; k < repeats; ++k) {
        std::vector<T> work = input;
        const auto t0 = std::chrono::steady_clock::now();
        run_sorter_plain(sorter, std::span<T>(work));
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    r.median_ms = times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    return r;
}

} // namespace

BenchmarkResult benchmark(const SorterSpec& sorter, const DatasetSpec& spec, int repeats) {
    if (repeats < 3) throw std::domain_error("repeats must be >= 3");
    switch (spec.element) {
    case ElementKind::Int4: return benchmark_typed(sorter, generate_dataset(spec), repeats);
    case ElementKind::Float8: return benchmark_typed(sorter, generate_dataset_double(spec), repeats);
    case ElementKind::Record32: return benchmark_typed(sorter, generate_dataset_record(spec), repeats);
    }
    throw std::logic_error("unknown element kind");
}

} // namespace qsa
