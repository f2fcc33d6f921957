#include "qsa/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qsa {

WideScalar bad_case_probability(DistributionTable& table, std::int64_t n, double tau) {
    if (!(tau > 1.0)) throw std::domain_error("tau must be > 1");
    if (n < 1) throw std::domain_error("n must be >= 1");
    const Distribution& f = table.at(n);
    const double threshold = tau * mean(f).to_double();
    return tail_weight(f, threshold) / ws_factorial(n);
}

double probability_ratio(DistributionTable& table, double tau, std::int64_t n_num, std::int64_t n_den) {
    const WideScalar den = bad_case_probability(table, n_den, tau);
    if (den.is_zero()) throw std::domain_error("probability ratio with zero denominator");
    return (bad_case_probability(table, n_num, tau) / den).to_double();
}

namespace {

std::string format_amount(const WideScalar& x) {
    char buf[64];
    const double v = x.to_double();
    if (v < 10.0) {
        std::snprintf(buf, sizeof buf, "%.2g", v);
    } else if (v < 1000.0) {
        std::snprintf(buf, sizeof buf, "%.3g", v);
    } else {
        return ws_to_decimal(x, 2);
    }
    return buf;
}

} // namespace

std::string expected_time_to_event(const WideScalar& p, double interval_ms) {
    if (!(interval_ms > 0.0)) throw std::domain_error("interval must be > 0");
    if (p.is_zero()) return "never";
    const WideScalar seconds = WideScalar(interval_ms / 1000.0) / p;
    struct Unit {
        const char* name;
        double seconds;
        double next_limit;
    };
    static constexpr Unit units[] = {
        {"s", 1.0, 60.0},
        {"m", 60.0, 60.0},
        {"h", 3600.0, 24.0},
        {"d", 86400.0, 365.0},
        {"a", 31557600.0, 0.0},
    };
    for (const Unit& u : units) {
        const WideScalar amount = seconds / WideScalar(u.seconds);
        if (u.next_limit == 0.0 || amount < WideScalar(u.next_limit)) {
            return format_amount(amount) + " " + u.name;
        }
    }
    throw std::logic_error("unreachable time unit");
}

double harmonic2(std::int64_t n) {
    double s = 0.0;
    for (std::int64_t k = n; k >= 1; --k) {
        const auto x = static_cast<double>(k);
        s += 1.0 / (x * x);
    }
    return s;
}

double iliopoulos_sigma(std::int64_t n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    const auto x = static_cast<long double>(n);
    long double h = 0.0L;
    long double h2 = 0.0L;
    for (std::int64_t k = n; k >= 1; --k) {
        const auto y = static_cast<long double>(k);
        h += 1.0L / y;
        h2 += 1.0L / (y * y);
    }
    long double r = 7.0L * x * x - 4.0L * (x + 1.0L) * (x + 1.0L) * h2 - 2.0L * (x + 1.0L) * h + 13.0L * x;
    if (r < 0.0L) {
        if (r < -1e-9L * x * x) throw std::domain_error("negative radicand");
        r = 0.0L;
    }
    return static_cast<double>(std::sqrt(r));
}

WorstCaseReport worst_case_bound_check(const std::vector<std::int64_t>& maxima, double coefficient,
                                       double exponent) {
    WorstCaseReport rep;
    const auto n_max = static_cast<std::int64_t>(maxima.size()) - 1;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const double bound = coefficient * std::pow(static_cast<double>(n), exponent);
        const double ratio = static_cast<double>(maxima[static_cast<std::size_t>(n)]) / bound;
        if (ratio > rep.max_bound_ratio) {
            rep.max_bound_ratio = ratio;
            rep.argmax_n = n;
        }
    }
    if (n_max >= 1) {
        const auto x = static_cast<double>(n_max);
        rep.leading_coefficient = static_cast<double>(maxima.back()) / (x * x);
    }
    return rep;
}

} // namespace qsa
