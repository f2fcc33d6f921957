#include "doctest.h"
#include "qsa/empirics.hpp"
#include "qsa/recurrences.hpp"
#include "qsa/sorters.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace qsa;

namespace {

std::vector<std::int32_t> shuffled(std::size_t n, std::uint64_t seed) {
    std::vector<std::int32_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::mt19937_64 g(seed);
    std::shuffle(v.begin(), v.end(), g);
    return v;
}

template <class Sort>
SortStats sort_checked(std::vector<std::int32_t> v, Sort sort) {
    auto want = v;
    std::sort(want.begin(), want.end());
    SortStats st;
    Counting<> pr(st);
    sort(std::span<std::int32_t>(v), pr);
    CHECK(v == want);
    return st;
}

} // namespace

TEST_CASE("median of three medians") {
    const std::int32_t a[] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    SortStats st;
    Counting<> pr(st);
    CHECK(a[medofmed(9, 1, std::span<const std::int32_t>(a), pr)] == 5);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto v = shuffled(9, seed);
        SortStats s;
        Counting<> p(s);
        medofmed(9, 1, std::span<const std::int32_t>(v), p);
        CHECK(s.comparisons >= 8);
        CHECK(s.comparisons <= 12);
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto v = shuffled(27, seed);
        Plain<> p;
        const std::int32_t piv = v[medofmed(27, 1, std::span<const std::int32_t>(v), p)];
        CHECK(piv >= 7);
        CHECK(piv <= 19);
    }
    Plain<> p;
    CHECK_THROWS_AS(medofmed(27, 2, std::span<const std::int32_t>(a), p), std::out_of_range);
}

TEST_CASE("partition schemes split around the pivot") {
    for (auto scheme : {PartitionScheme::SweepSimple, PartitionScheme::SweepExtended, PartitionScheme::ClassicCollision,
                        PartitionScheme::ClassicCollisionExtended, PartitionScheme::NewCollision}) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            auto v = shuffled(40, seed);
            const std::int32_t piv = v[20];
            Plain<> p;
            const PartitionResult r = partition(scheme, std::span<std::int32_t>(v), 20, p);
            // Classic collision may leave the pivot inside either subarray.
            const bool strict = scheme != PartitionScheme::ClassicCollision;
            for (std::size_t i = 0; i < r.lo_end; ++i) CHECK((strict ? v[i] < piv : v[i] <= piv));
            for (std::size_t i = r.lo_end; i < r.hi_begin; ++i) CHECK(v[i] == piv);
            for (std::size_t i = r.hi_begin; i < v.size(); ++i) CHECK((strict ? v[i] > piv : v[i] >= piv));
            CHECK(r.lo_end <= r.hi_begin);
        }
    }
}

TEST_CASE("quicksort variants sort") {
    for (int model = 1; model <= 5; ++model) {
        for (bool three : {false, true}) {
            const auto opt = QuicksortOptions::for_model(model, three);
            for (std::size_t n : {0u, 1u, 2u, 3u, 9u, 10u, 46u, 500u, 3000u}) {
                sort_checked(shuffled(n, n + 17), [&](auto s, auto& pr) { quicksort(s, opt, pr); });
                std::vector<std::int32_t> dup(n);
                for (std::size_t i = 0; i < n; ++i) dup[i] = static_cast<std::int32_t>((i * 7919) % 5);
                sort_checked(dup, [&](auto s, auto& pr) { quicksort(s, opt, pr); });
            }
        }
    }
}

TEST_CASE("quicksort on sorted input is not slower than on random input") {
    const auto opt = QuicksortOptions::for_model(5);
    std::vector<std::int32_t> inc(20000);
    std::iota(inc.begin(), inc.end(), 0);
    const auto a = sort_checked(inc, [&](auto s, auto& pr) { quicksort(s, opt, pr); });
    const auto b = sort_checked(shuffled(20000, 3), [&](auto s, auto& pr) { quicksort(s, opt, pr); });
    CHECK(a.comparisons < 3 * b.comparisons);
}

TEST_CASE("three-way quicksort on equal keys is linear") {
    std::vector<std::int32_t> eq(10000, 4);
    const auto three = sort_checked(eq, [&](auto s, auto& pr) { quicksort(s, QuicksortOptions::for_model(1, true), pr); });
    const auto two = sort_checked(eq, [&](auto s, auto& pr) { quicksort(s, QuicksortOptions::for_model(1, false), pr); });
    CHECK(three.comparisons <= 20000);
    CHECK(two.comparisons > 5 * three.comparisons);
}

TEST_CASE("default quicksort comparison count tracks the average recurrence") {
    QuicksortOptions opt;
    opt.threeway = false;
    opt.n_basis_max = 15;
    const auto st = sort_checked(shuffled(10000, 99), [&](auto s, auto& pr) { quicksort(s, opt, pr); });
    ModelConfig cfg = ModelConfig::named("5");
    cfg.n_b_max = 15;
    const double avg = average_comparisons(cfg, 10000);
    CHECK(static_cast<double>(st.comparisons) == doctest::Approx(avg).epsilon(0.05));
}

TEST_CASE("insertion sort") {
    std::vector<std::int32_t> one = {3};
    CHECK(sort_checked(one, [](auto s, auto& pr) { insertion_sort(s, pr); }).comparisons == 0);
    std::vector<std::int32_t> rev(10);
    std::iota(rev.rbegin(), rev.rend(), 0);
    CHECK(sort_checked(rev, [](auto s, auto& pr) { insertion_sort(s, pr); }).comparisons == 45);
    std::map<std::uint64_t, int> hist;
    std::vector<std::int32_t> p = {0, 1, 2};
    do {
        ++hist[sort_checked(p, [](auto s, auto& pr) { insertion_sort(s, pr); }).comparisons];
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(hist == std::map<std::uint64_t, int>{{2, 2}, {3, 4}});
}

TEST_CASE("heapsort variants") {
    for (auto variant : {HeapVariant::Classic, HeapVariant::BottomUp}) {
        for (std::size_t n : {0u, 1u, 2u, 7u, 100u, 1001u}) {
            sort_checked(shuffled(n, n), [&](auto s, auto& pr) { heapsort(s, variant, pr); });
        }
        std::vector<std::int32_t> inc(100);
        std::iota(inc.begin(), inc.end(), 0);
        sort_checked(inc, [&](auto s, auto& pr) { heapsort(s, variant, pr); });
    }
    const auto v = shuffled(100000, 5);
    const auto classic = sort_checked(v, [](auto s, auto& pr) { heapsort(s, HeapVariant::Classic, pr); });
    const auto bottom = sort_checked(v, [](auto s, auto& pr) { heapsort(s, HeapVariant::BottomUp, pr); });
    const auto quick = sort_checked(v, [](auto s, auto& pr) { quicksort(s, QuicksortOptions::for_model(5), pr); });
    CHECK(bottom.comparisons < classic.comparisons);
    CHECK(bottom.comparisons < quick.comparisons);
}

TEST_CASE("sorting records and doubles") {
    DatasetSpec spec{DatasetKind::Random, 2000, 3, ElementKind::Record32};
    auto recs = generate_dataset_record(spec);
    SorterSpec s;
    s.quick = QuicksortOptions::for_model(4, true);
    run_sorter(s, std::span<Record>(recs));
    CHECK(std::is_sorted(recs.begin(), recs.end()));
    auto d = generate_dataset_double(spec);
    s.kind = SorterKind::HeapsortBottomUp;
    run_sorter_plain(s, std::span<double>(d));
    CHECK(std::is_sorted(d.begin(), d.end()));
}
