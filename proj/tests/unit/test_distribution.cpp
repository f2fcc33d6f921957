#include "doctest.h"
#include "qsa/distribution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace qsa;

namespace {

Distribution ints(std::int64_t lo, std::initializer_list<double> w) {
    std::vector<WideScalar> v;
    for (double x : w) v.emplace_back(x);
    return Distribution(lo, std::move(v));
}

} // namespace

TEST_CASE("construction trims zero weights") {
    const Distribution d = ints(0, {0, 0, 1, 2, 0});
    CHECK(d.lo() == 2);
    CHECK(d.hi() == 3);
    CHECK(d[2].to_double() == 1.0);
    CHECK(d[7].is_zero());
    CHECK(ints(4, {0, 0}).empty());
    CHECK(Distribution::delta(3).lo() == 3);
}

TEST_CASE("convolution") {
    const Distribution g = ints(1, {1, 1});
    CHECK(convolve(Distribution::delta(2), Distribution::delta(3)) == Distribution::delta(5));
    CHECK(convolve(Distribution::delta(0), Distribution::delta(0)) == Distribution::delta(0));
    CHECK(convolve(g, g) == ints(2, {1, 2, 1}));
    CHECK(convolve(Distribution::delta(5), g) == g.shifted(5));
    CHECK(convolve(Distribution(), g).empty());
}

TEST_CASE("convolution is independent of the thread count and of scaling") {
    std::vector<WideScalar> a, b;
    for (int i = 0; i < 300; ++i) {
        a.push_back(WideScalar::from_parts(1.0 + (i % 7) / 8.0, -3 * i));
        b.push_back(WideScalar::from_parts(1.0 + (i % 5) / 8.0, 2 * i - 400));
    }
    const Distribution g(10, a), h(3, b);
    const Distribution one = convolve(g, h, 1);
    CHECK(convolve(g, h, 4) == one);
    // Reference evaluation with plain WideScalar sums.
    for (std::int64_t j : {13, 200, 500, 611}) {
        WideSum s;
        for (std::int64_t i = g.lo(); i <= g.hi(); ++i) s.add(g[i] * h[j - i]);
        CHECK(one[j].log2() == doctest::Approx(s.value().log2()).epsilon(1e-14));
    }
}

TEST_CASE("sum of convolutions") {
    const Distribution g = ints(1, {1, 1});
    const ScaledDistribution sg(g), sd(Distribution::delta(0));
    const ConvolutionTerm terms[] = {{WideScalar(1.0), &sg, &sg}, {WideScalar(2.0), &sd, &sg}};
    CHECK(sum_of_convolutions(terms, 2) == ints(1, {2, 3, 2, 1}));
}

TEST_CASE("mix") {
    const Distribution g = ints(1, {1, 3});
    CHECK(mix(Distribution(), g, WideScalar(1.0)) == g);
    CHECK(mix(g, g, WideScalar(1.0)) == ints(1, {2, 6}));
    CHECK(mix(g, Distribution::delta(0), WideScalar(2.0)) == ints(0, {2, 1, 3}));
}

TEST_CASE("moments") {
    CHECK(mean(Distribution::delta(7)).to_double() == 7.0);
    CHECK(stddev_of(Distribution::delta(7)).to_double() == 0.0);
    const Distribution f2 = ints(1, {1, 1});
    const Distribution f3 = ints(2, {1, 2, 2, 1});
    CHECK(mean(f2).to_double() == doctest::Approx(1.5));
    CHECK(mean(f3).to_double() == doctest::Approx(3.5));
    CHECK(stddev_of(f2).to_double() == doctest::Approx(0.5));
    CHECK(stddev_of(f3).to_double() == doctest::Approx(std::sqrt(5.5 / 6.0)));
    CHECK_THROWS_AS(mean(Distribution()), std::domain_error);
}

TEST_CASE("tail weights") {
    const Distribution f3 = ints(2, {1, 2, 2, 1});
    CHECK(tail_weight(f3, 5.0).is_zero());
    CHECK(tail_weight(f3, 1.5).to_double() == 6.0);
    CHECK(tail_weight(f3, 4.2).to_double() == 1.0);
    CHECK(tail_weight(f3, 4.0).to_double() == 1.0);
}

TEST_CASE("csv output") {
    std::ostringstream os;
    ints(1, {1, 2}).write_csv(os);
    CHECK(os.str() == "1,1.0000000000000000e0\n2,2.0000000000000000e0\n");
}
