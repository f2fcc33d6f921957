// Brute-force oracles, simulations, the comparison adversary, test data and
// benchmarks.
#pragma once

#include "qsa/numerics.hpp"
#include "qsa/pivot_models.hpp"
#include "qsa/sorters.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qsa {

// Deterministic random streams: mt19937_64 seeded through splitmix64, with
// bounded integers drawn by Lemire's multiply-shift method so that results
// are identical on every platform.
std::uint64_t splitmix64(std::uint64_t& state);

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream = 0);
    std::uint64_t next() { return engine_(); }
    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    // Uniform in [0, 1).
    double unit();

private:
    std::mt19937_64 engine_;
};

struct PartitionSummary {
    std::int64_t n = 0;
    ExactCount permutations = 0;
    ExactRational comparisons_avg;
    ExactRational movements_avg;
    std::map<std::uint64_t, ExactCount> comparison_histogram;
};

// Runs the scheme on every permutation of 0..n-1 with the pivot at n/2.
// Requires 2 <= n <= 11.
PartitionSummary enumerate_partition_stats(PartitionScheme scheme, std::int64_t n);

// Comparison-count histogram of the instrumented Quicksort over every
// permutation of 0..n-1. Requires 2 <= n <= 10.
std::map<std::uint64_t, ExactCount> enumerate_sort_histogram(const QuicksortOptions& opt, std::int64_t n);

// Bins final pivot positions over random permutations; bin b counts
// positions [b*bin, (b+1)*bin).
std::vector<std::uint64_t> simulate_pivot_positions(const ModelConfig& cfg, std::int64_t n, std::int64_t trials,
                                                    std::int64_t bin, std::uint64_t seed);

enum class SorterKind { Quicksort, HeapsortClassic, HeapsortBottomUp, InsertionSort };

struct SorterSpec {
    SorterKind kind = SorterKind::Quicksort;
    QuicksortOptions quick;
    [[nodiscard]] std::string name() const;
};

struct AdversaryResult {
    std::uint64_t comparisons = 0;
    std::uint64_t replay_comparisons = 0;
    std::vector<std::int32_t> input; // the constructed bad input
};

// McIlroy's gas/solid adversary. Throws std::logic_error when the sorter's
// output is inconsistent with the answers it received or the replay of the
// constructed input does not reproduce the comparison count.
AdversaryResult killer_adversary(const SorterSpec& sorter, std::int64_t n);

enum class DatasetKind { Random, Increasing, Decreasing, Equal, OrganPipe, TwoValuedRandom };
enum class ElementKind { Int4, Float8, Record32 };

struct Record {
    std::int32_t key;
    std::int32_t data[7];
    friend bool operator<(const Record& a, const Record& b) { return a.key < b.key; }
};

struct DatasetSpec {
    DatasetKind kind = DatasetKind::Random;
    std::int64_t n = 0;
    std::uint64_t seed = 1;
    ElementKind element = ElementKind::Int4;
};

DatasetKind parse_dataset_kind(std::string_view name);
std::string_view dataset_kind_name(DatasetKind kind);

// Integer keys of the dataset; element kinds derive from them.
std::vector<std::int32_t> generate_dataset(const DatasetSpec& spec);
std::vector<double> generate_dataset_double(const DatasetSpec& spec);
std::vector<Record> generate_dataset_record(const DatasetSpec& spec);

template <class T>
SortStats run_sorter(const SorterSpec& s, std::span<T> a) {
    SortStats st;
    Counting<> pr(st);
    switch (s.kind) {
    case SorterKind::Quicksort: quicksort(a, s.quick, pr); break;
    case SorterKind::HeapsortClassic: heapsort(a, HeapVariant::Classic, pr); break;
    case SorterKind::HeapsortBottomUp: heapsort(a, HeapVariant::BottomUp, pr); break;
    case SorterKind::InsertionSort: insertion_sort(a, pr); break;
    }
    return st;
}

template <class T>
void run_sorter_plain(const SorterSpec& s, std::span<T> a) {
    Plain<> pr;
    switch (s.kind) {
    case SorterKind::Quicksort: quicksort(a, s.quick, pr); break;
    case SorterKind::HeapsortClassic: heapsort(a, HeapVariant::Classic, pr); break;
    case SorterKind::HeapsortBottomUp: heapsort(a, HeapVariant::BottomUp, pr); break;
    case SorterKind::InsertionSort: insertion_sort(a, pr); break;
    }
}

struct BenchmarkResult {
    double median_ms = 0.0;
    std::uint64_t comparisons = 0;
    std::uint64_t movements = 0;
};

BenchmarkResult benchmark(const SorterSpec& sorter, const DatasetSpec& spec, int repeats);

} // namespace qsa
