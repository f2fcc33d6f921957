// qsa-cli: command-line front end of the Quicksort analysis library.
#include "output.hpp"
#include "ranges.hpp"

#include "qsa/qsa.h"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using qsacli::CsvTable;
using qsacli::Plot;
using qsacli::Series;

constexpr std::int64_t kLongThreshold = 200;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid arguments and domain errors come from user input; the rest are
// failures of the library itself.
void check(qsa_status s, const std::string& context = {}) {
    if (s == QSA_OK) return;
    std::string msg = qsa_last_error();
    if (!context.empty()) msg = context + ": " + msg;
    if (s == QSA_E_INVALID_ARGUMENT || s == QSA_E_DOMAIN) throw UsageError(msg);
    throw InternalError(msg);
}

struct Options {
    std::string model = "1";
    std::int64_t qmin = -1;
    std::int64_t nbmax = -1;
    std::int64_t sample = 0;
    std::string n;
    std::int64_t nmax = -1;
    std::string tau;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    int digits = 6;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool allow_long = false;
    bool log_y = false;
    std::string selection = "fixed";
    // command specific
    std::string which;
    std::string models;
    bool exact = false;
    std::int64_t trials = 1000000;
    std::int64_t bin = 10;
    std::string alg;
    bool threeway = false;
    std::string generator;
    std::string element = "int";
    int repeats = 5;
    std::string input;
    bool stats = false;
    double interval_ms = 1.0;
};

Options opt;

// ---- formatting --------------------------------------------------------

std::string fmt_wide(qsa_wide w) {
    char buf[64];
    std::size_t count = 0;
    check(qsa_wide_to_decimal(w, opt.digits, buf, sizeof buf, &count), "--digits");
    return buf;
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    qsa_wide w{};
    check(qsa_wide_from_double(std::fabs(x), &w));
    return (x < 0 ? "-" : "") + fmt_wide(w);
}

std::string fmt_param(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string str(std::int64_t v) { return std::to_string(v); }

double wide_to_double(qsa_wide w) {
    if (w.mantissa == 0.0) return 0.0;
    return std::ldexp(w.mantissa, static_cast<int>(std::clamp<std::int64_t>(w.exponent, -2000, 2000)));
}

double wide_log10(qsa_wide w) {
    double v = 0.0;
    check(qsa_wide_log10(w, &v));
    return v;
}

// ---- argument helpers --------------------------------------------------

qsa_model model_from(const std::string& name) {
    static const std::vector<std::string> known = {"1", "2", "3", "4", "4a", "4b", "5"};
    if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw UsageError("--model: model must be 1..5 (or 4a, 4b), got '" + name + "'");
    }
    qsa_model m{};
    check(qsa_model_named(name.c_str(), &m), "--model");
    if (opt.qmin >= 0) m.q_min = opt.qmin;
    if (opt.nbmax >= 0) m.n_b_max = opt.nbmax;
    m.forced_sample = opt.sample;
    check(qsa_model_validate(&m), "--model");
    return m;
}

qsa_model the_model() {
    if (opt.model.find(',') != std::string::npos) throw UsageError("--model: this command takes a single model");
    return model_from(opt.model);
}

std::vector<std::int64_t> n_values(std::optional<std::string> fallback = std::nullopt) {
    std::vector<std::int64_t> v;
    if (!opt.n.empty()) {
        v = qsacli::parse_int_list(opt.n, "--n");
    } else if (opt.nmax >= 0) {
        for (std::int64_t k = 2; k <= opt.nmax; ++k) v.push_back(k);
        if (opt.nmax < 2) v.push_back(opt.nmax);
    } else if (fallback) {
        v = qsacli::parse_int_list(*fallback, "--n");
    } else {
        throw UsageError("--n: required (a size, a list such as 100,250 or a range such as 2..10)");
    }
    for (auto n : v) {
        if (n < 0) throw UsageError("--n: n must be >= 0");
    }
    if (v.empty()) throw UsageError("--n: no sizes given");
    return v;
}

std::int64_t single_n() {
    const auto v = n_values();
    if (v.size() != 1) throw UsageError("--n: this command takes a single size");
    return v.front();
}

std::vector<double> tau_values(const std::string& fallback) {
    const auto v = qsacli::parse_real_list(opt.tau.empty() ? fallback : opt.tau, "--tau");
    for (double t : v) {
        if (!(t > 1.0)) throw UsageError("--tau: tau must be > 1");
    }
    return v;
}

qsa_selection_mode selection_mode() {
    if (opt.selection == "fixed") return QSA_SELECTION_FIXED_SHIFT;
    if (opt.selection == "exact") return QSA_SELECTION_EXACT;
    throw UsageError("--selection: must be 'fixed' or 'exact'");
}

void require_long_ok(std::int64_t n) {
    if (n > kLongThreshold && !opt.allow_long) {
        throw UsageError("--n: distributions beyond n = " + str(kLongThreshold) +
                         " can take hours; pass --allow-long to run them");
    }
}

qsa_sorter sorter_from(const std::string& name) {
    std::string full = name;
    if (name.size() == 2 && name[0] == 'm') full = "quicksort-" + name;
    qsa_sorter s{};
    check(qsa_sorter_parse(full.c_str(), &s), "--alg");
    if (opt.threeway) s.threeway = 1;
    if (opt.qmin >= 0) s.q_min = opt.qmin;
    if (opt.nbmax >= 0) s.n_b_max = opt.nbmax;
    return s;
}

std::string sorter_name(const qsa_sorter& s) {
    char buf[64];
    std::size_t count = 0;
    check(qsa_sorter_name(&s, buf, sizeof buf, &count));
    return buf;
}

// ---- tables with progress ----------------------------------------------

struct TableHandle {
    qsa_table* t = nullptr;
    explicit TableHandle(const qsa_model& m) { check(qsa_table_create(&m, selection_mode(), opt.threads, &t)); }
    ~TableHandle() { qsa_table_destroy(t); }
    TableHandle(const TableHandle&) = delete;
    TableHandle& operator=(const TableHandle&) = delete;
};

struct ProgressState {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::chrono::steady_clock::time_point last{};
    double base = 0.0;
    bool printed = false;
};

std::string duration_text(double s) {
    char buf[32];
    if (s < 120) std::snprintf(buf, sizeof buf, "%.0fs", s);
    else if (s < 7200) std::snprintf(buf, sizeof buf, "%.1fm", s / 60);
    else std::snprintf(buf, sizeof buf, "%.1fh", s / 3600);
    return buf;
}

// Work per size grows roughly like n^5, so the done fraction is taken from n^6.
int report_progress(std::int64_t n, std::int64_t target, void* user) {
    auto* st = static_cast<ProgressState*>(user);
    const auto now = std::chrono::steady_clock::now();
    if (n < target && now - st->last < std::chrono::seconds(1)) return 0;
    st->last = now;
    const double elapsed = std::chrono::duration<double>(now - st->start).count();
    const double total = std::pow(static_cast<double>(target), 6) - st->base;
    const double done = std::pow(static_cast<double>(n), 6) - st->base;
    const double frac = total > 0 ? std::clamp(done / total, 1e-12, 1.0) : 1.0;
    const double eta = elapsed * (1.0 - frac) / frac;
    std::fprintf(stderr, "\r  f_n %lld/%lld  %.1f%%  elapsed %s  ETA %s   ", static_cast<long long>(n),
                 static_cast<long long>(target), 100.0 * frac, duration_text(elapsed).c_str(),
                 duration_text(eta).c_str());
    if (n == target) std::fprintf(stderr, "\n");
    st->printed = true;
    return 0;
}

void extend(TableHandle& h, std::int64_t n) {
    require_long_ok(n);
    std::int64_t have = 0;
    check(qsa_table_computed(h.t, &have));
    if (have >= n) return;
    if (n > kLongThreshold) {
        ProgressState st;
        st.base = std::pow(static_cast<double>(have), 6);
        check(qsa_table_extend(h.t, n, report_progress, &st));
    } else {
        check(qsa_table_extend(h.t, n, nullptr, nullptr));
    }
}

// ---- output -------------------------------------------------------------

void emit(const std::string& content) {
    if (opt.out.empty() || opt.out == "-") {
        std::fwrite(content.data(), 1, content.size(), stdout);
        std::fflush(stdout);
        return;
    }
    try {
        qsacli::write_atomically(opt.out, content);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--out: ") + e.what());
    }
}

void finish(const CsvTable& table, const std::optional<Plot>& plot) {
    if (opt.format == "csv") {
        emit(table.str());
    } else if (opt.format == "svg") {
        if (!plot) throw UsageError("--format: svg is not available for this command");
        Plot p = *plot;
        if (opt.log_y) p.log_y = true;
        emit(qsacli::render_svg(p));
    } else {
        throw UsageError("--format: must be 'csv' or 'svg'");
    }
}

// ---- commands -----------------------------------------------------------

void cmd_dist() {
    const qsa_model m = the_model();
    const std::int64_t n = single_n();
    TableHandle h(m);
    extend(h, n);
    std::int64_t lo = 0, hi = 0;
    check(qsa_table_support(h.t, n, &lo, &hi));
    std::vector<qsa_wide> w(static_cast<std::size_t>(hi - lo + 1));
    std::size_t count = 0;
    check(qsa_table_weights(h.t, n, w.data(), w.size(), &count));
    qsa_wide fact{};
    check(qsa_wide_factorial(n, &fact));

    CsvTable t({"j", "frequency", "probability"});
    Plot plot{"Frequency distribution, model " + opt.model + ", n = " + str(n), "comparisons", "probability",
              false, {{"f_n / n!", {}}}};
    for (std::size_t i = 0; i < w.size(); ++i) {
        qsa_wide p{};
        check(qsa_wide_div(w[i], fact, &p));
        t.add({str(lo + static_cast<std::int64_t>(i)), fmt_wide(w[i]), fmt_wide(p)});
        plot.series[0].points.emplace_back(static_cast<double>(lo) + static_cast<double>(i), wide_to_double(p));
    }
    finish(t, plot);
}

void cmd_avg() {
    const qsa_model m = the_model();
    const auto ns = n_values();
    const std::int64_t nmax = *std::max_element(ns.begin(), ns.end());
    std::vector<double> avg(static_cast<std::size_t>(nmax) + 1);
    std::size_t count = 0;
    check(qsa_average_comparisons(&m, nmax, selection_mode(), avg.data(), avg.size(), &count));
    CsvTable t({"n", "average"});
    Plot plot{"Average comparisons, model " + opt.model, "n", "comparisons", false, {{"model " + opt.model, {}}}};
    for (auto n : ns) {
        const double a = avg[static_cast<std::size_t>(n)];
        t.add({str(n), fmt(a)});
        plot.series[0].points.emplace_back(static_cast<double>(n), a);
    }
    finish(t, plot);
}

void cmd_max() {
    const qsa_model m = the_model();
    const auto ns = n_values();
    const std::int64_t nmax = *std::max_element(ns.begin(), ns.end());
    std::vector<std::int64_t> mx(static_cast<std::size_t>(nmax) + 1);
    std::size_t count = 0;
    check(qsa_max_comparisons(&m, nmax, mx.data(), mx.size(), &count));
    CsvTable t({"n", "max", "max_over_n2", "bound_ratio"});
    Plot plot{"Maximum comparisons, model " + opt.model, "n", "comparisons", false,
              {{"model " + opt.model, {}}, {"3.8 n^1.37", {}}}};
    for (auto n : ns) {
        const double c = static_cast<double>(mx[static_cast<std::size_t>(n)]);
        const double nd = static_cast<double>(n);
        const double bound = 3.8 * std::pow(nd, 1.37);
        t.add({str(n), str(mx[static_cast<std::size_t>(n)]), n > 0 ? fmt(c / (nd * nd)) : "",
               n > 0 ? fmt(c / bound) : ""});
        plot.series[0].points.emplace_back(nd, c);
        plot.series[1].points.emplace_back(nd, bound);
    }
    if (m.model != 5) plot.series.pop_back();
    finish(t, plot);
}

void cmd_badprob() {
    const qsa_model m = the_model();
    const auto ns = n_values();
    const auto taus = tau_values("1.25");
    TableHandle h(m);
    extend(h, *std::max_element(ns.begin(), ns.end()));
    CsvTable t({"n", "tau", "probability"});
    std::map<std::int64_t, std::map<double, double>> logp;
    for (auto n : ns) {
        for (double tau : taus) {
            qsa_wide p{};
            check(qsa_table_bad_probability(h.t, n, tau, &p), "n = " + str(n));
            t.add({str(n), fmt_param(tau), fmt_wide(p)});
            logp[n][tau] = wide_log10(p);
        }
    }
    Plot plot;
    plot.title = "Bad-case probability, model " + opt.model;
    plot.y_label = "log10 probability";
    if (ns.size() >= taus.size()) {
        plot.x_label = "n";
        for (double tau : taus) {
            Series s{"tau = " + fmt_param(tau), {}};
            for (auto n : ns) s.points.emplace_back(static_cast<double>(n), logp[n][tau]);
            plot.series.push_back(std::move(s));
        }
    } else {
        plot.x_label = "tau";
        for (auto n : ns) {
            Series s{"n = " + str(n), {}};
            for (double tau : taus) s.points.emplace_back(tau, logp[n][tau]);
            plot.series.push_back(std::move(s));
        }
    }
    finish(t, plot);
}

void cmd_sigma() {
    const qsa_model m = the_model();
    const auto ns = n_values();
    TableHandle h(m);
    extend(h, *std::max_element(ns.begin(), ns.end()));
    CsvTable t({"n", "sigma", "iliopoulos", "rel_diff"});
    Plot plot{"Standard deviation, model " + opt.model, "n", "comparisons", false,
              {{"model " + opt.model, {}}, {"closed form (simple pivot)", {}}}};
    for (auto n : ns) {
        if (n < 1) throw UsageError("--n: n must be >= 1");
        double mean = 0, sd = 0, il = 0;
        check(qsa_table_moments(h.t, n, &mean, &sd));
        check(qsa_iliopoulos_sigma(n, &il));
        t.add({str(n), fmt(sd), fmt(il), il > 0 ? fmt((sd - il) / il) : ""});
        plot.series[0].points.emplace_back(static_cast<double>(n), sd);
        plot.series[1].points.emplace_back(static_cast<double>(n), il);
    }
    finish(t, plot);
}

void cmd_kernel() {
    const std::int64_t n = single_n();
    std::vector<double> p(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)));
    std::size_t count = 0;
    if (opt.exact) {
        check(qsa_pivot_kernel_exact(n, p.data(), p.size(), &count), "--n");
    } else {
        const qsa_model m = the_model();
        check(qsa_pivot_kernel(&m, n, p.data(), p.size(), &count), "--n");
    }
    CsvTable t({"i", "p"});
    Plot plot{"Pivot kernel, n = " + str(n), "final pivot index i", "p_n(i)", false,
              {{opt.exact ? "exact median of three medians" : "model " + opt.model, {}}}};
    for (std::size_t i = 0; i < count; ++i) {
        t.add({str(static_cast<std::int64_t>(i)), fmt(p[i])});
        plot.series[0].points.emplace_back(static_cast<double>(i), p[i]);
    }
    finish(t, plot);
}

const char* scheme_name(qsa_partition_scheme s) {
    switch (s) {
    case QSA_PARTITION_SWEEP: return "sweep";
    case QSA_PARTITION_SWEEP_EXTENDED: return "sweep-extended";
    case QSA_PARTITION_CLASSIC: return "classic-collision";
    case QSA_PARTITION_CLASSIC_EXTENDED: return "classic-collision-extended";
    case QSA_PARTITION_NEW: return "new-collision";
    }
    return "?";
}

std::string rational(std::int64_t num, std::int64_t den) {
    return den == 1 ? str(num) : str(num) + "/" + str(den);
}

void table_partition() {
    const auto ns = n_values(std::string("2..10"));
    CsvTable t({"table", "scheme", "n", "comparisons_avg", "movements_avg", "comparisons_exact", "movements_exact"});
    const std::pair<int, qsa_partition_scheme> layout[] = {
        {1, QSA_PARTITION_SWEEP},          {1, QSA_PARTITION_CLASSIC},          {1, QSA_PARTITION_NEW},
        {2, QSA_PARTITION_SWEEP_EXTENDED}, {2, QSA_PARTITION_CLASSIC_EXTENDED},
    };
    for (const auto& [table, scheme] : layout) {
        for (auto n : ns) {
            qsa_partition_summary s{};
            check(qsa_partition_stats(scheme, n, &s, nullptr, nullptr, 0, nullptr), "--n");
            t.add({str(table), scheme_name(scheme), str(n),
                   fmt(static_cast<double>(s.comparisons_num) / static_cast<double>(s.comparisons_den)),
                   fmt(static_cast<double>(s.movements_num) / static_cast<double>(s.movements_den)),
                   rational(s.comparisons_num, s.comparisons_den), rational(s.movements_num, s.movements_den)});
        }
    }
    finish(t, std::nullopt);
}

void table_histogram() {
    const auto ns = n_values(std::string("10"));
    CsvTable t({"scheme", "n", "comparisons", "permutations"});
    for (auto scheme : {QSA_PARTITION_CLASSIC, QSA_PARTITION_CLASSIC_EXTENDED}) {
        for (auto n : ns) {
            std::vector<std::int64_t> keys(64), counts(64);
            std::size_t count = 0;
            check(qsa_partition_stats(scheme, n, nullptr, keys.data(), counts.data(), keys.size(), &count), "--n");
            for (std::size_t i = 0; i < count; ++i) t.add({scheme_name(scheme), str(n), str(keys[i]), str(counts[i])});
        }
    }
    finish(t, std::nullopt);
}

std::vector<std::string> model_list(const std::string& fallback) {
    return qsacli::split(opt.models.empty() ? fallback : opt.models, ',');
}

void table_averages() {
    const auto ns = n_values(std::string("1000,2000,5000,10000"));
    const std::int64_t nmax = *std::max_element(ns.begin(), ns.end());
    CsvTable t({"model", "n", "average"});
    for (const auto& name : model_list("1,2,3,4a,4b,5")) {
        const qsa_model m = model_from(name);
        std::vector<double> avg(static_cast<std::size_t>(nmax) + 1);
        std::size_t count = 0;
        check(qsa_average_comparisons(&m, nmax, selection_mode(), avg.data(), avg.size(), &count));
        for (auto n : ns) t.add({name, str(n), fmt(avg[static_cast<std::size_t>(n)])});
    }
    finish(t, std::nullopt);
}

void table_ratio() {
    const auto ns = n_values(std::string("250,500"));
    if (ns.size() != 2) throw UsageError("--n: the ratio table takes two sizes, denominator then numerator");
    const auto taus = tau_values("1.1,1.25,1.5,2.0");
    CsvTable t({"tau", "model", "ratio"});
    for (const auto& name : model_list("1,2,3,5")) {
        TableHandle h(model_from(name));
        extend(h, std::max(ns[0], ns[1]));
        for (double tau : taus) {
            double r = 0;
            check(qsa_table_probability_ratio(h.t, tau, ns[1], ns[0], &r), "model " + name);
            t.add({fmt_param(tau), name, fmt(r)});
        }
    }
    finish(t, std::nullopt);
}

void table_times() {
    const std::int64_t n = n_values(std::string("500")).front();
    const auto taus = tau_values("1.1,1.25,1.5,2.0");
    CsvTable t({"tau", "model", "probability", "expected_time"});
    for (const auto& name : model_list("1,2,3,5")) {
        TableHandle h(model_from(name));
        extend(h, n);
        for (double tau : taus) {
            qsa_wide p{};
            check(qsa_table_bad_probability(h.t, n, tau, &p));
            char buf[64];
            std::size_t count = 0;
            check(qsa_expected_time(p, opt.interval_ms, buf, sizeof buf, &count), "--interval-ms");
            t.add({fmt_param(tau), name, fmt_wide(p), buf});
        }
    }
    finish(t, std::nullopt);
}

void cmd_tables() {
    if (opt.which == "partition") table_partition();
    else if (opt.which == "histogram") table_histogram();
    else if (opt.which == "averages") table_averages();
    else if (opt.which == "ratio") table_ratio();
    else if (opt.which == "times") table_times();
    else throw UsageError("--which: must be partition, histogram, averages, ratio or times");
}

void cmd_oracle() {
    const auto ns = n_values(std::string("2..7"));
    const qsa_model m = qsa_model_default(1);
    qsa_sorter s{};
    check(qsa_sorter_parse("quicksort-m1-2way", &s));
    TableHandle h(m);
    CsvTable t({"n", "j", "enumerated", "recurrence"});
    int mismatches = 0;
    for (auto n : ns) {
        std::vector<std::int64_t> keys(4096), counts(4096);
        std::size_t count = 0;
        check(qsa_sort_histogram(&s, n, keys.data(), counts.data(), keys.size(), &count), "--n");
        std::map<std::int64_t, std::int64_t> enumerated;
        for (std::size_t i = 0; i < count; ++i) enumerated[keys[i]] = counts[i];

        extend(h, n);
        std::int64_t lo = 0, hi = 0;
        check(qsa_table_support(h.t, n, &lo, &hi));
        std::vector<qsa_wide> w(static_cast<std::size_t>(hi - lo + 1));
        check(qsa_table_weights(h.t, n, w.data(), w.size(), &count));
        std::map<std::int64_t, double> recurrence;
        for (std::size_t i = 0; i < w.size(); ++i) recurrence[lo + static_cast<std::int64_t>(i)] = wide_to_double(w[i]);

        const std::int64_t jlo = std::min(enumerated.begin()->first, lo);
        const std::int64_t jhi = std::max(enumerated.rbegin()->first, hi);
        for (std::int64_t j = jlo; j <= jhi; ++j) {
            const std::int64_t e = enumerated.count(j) ? enumerated[j] : 0;
            const double r = recurrence.count(j) ? recurrence[j] : 0.0;
            if (static_cast<double>(e) != r) ++mismatches;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.0f", r);
            t.add({str(n), str(j), str(e), r == std::floor(r) && r < 9.0e15 ? std::string(buf) : fmt(r)});
        }
    }
    finish(t, std::nullopt);
    if (mismatches > 0) {
        throw InternalError("enumerated histograms differ from the recurrence at " + str(mismatches) + " points");
    }
}

void cmd_simulate() {
    const qsa_model m = the_model();
    const std::int64_t n = single_n();
    if (opt.bin < 1) throw UsageError("--bin: must be >= 1");
    if (opt.trials < 1) throw UsageError("--trials: must be >= 1");
    std::vector<std::uint64_t> hist(static_cast<std::size_t>((n + opt.bin - 1) / opt.bin) + 1);
    std::size_t count = 0;
    check(qsa_simulate_pivots(&m, n, opt.trials, opt.bin, opt.seed, hist.data(), hist.size(), &count), "--n");
    std::vector<double> p(static_cast<std::size_t>(n));
    std::size_t pc = 0;
    check(qsa_pivot_kernel(&m, n, p.data(), p.size(), &pc), "--n");
    CsvTable t({"bin_lo", "bin_hi", "count", "expected"});
    Plot plot{"Final pivot positions, model " + opt.model + ", n = " + str(n), "final pivot index",
              "count per bin", false, {{"simulation", {}}, {"model kernel", {}}}};
    for (std::size_t b = 0; b < count; ++b) {
        const std::int64_t lo = static_cast<std::int64_t>(b) * opt.bin;
        const std::int64_t hi = std::min(n, lo + opt.bin) - 1;
        double mass = 0.0;
        for (std::int64_t i = lo; i <= hi; ++i) mass += p[static_cast<std::size_t>(i)];
        const double expected = mass / static_cast<double>(n) * static_cast<double>(opt.trials);
        t.add({str(lo), str(hi), std::to_string(hist[b]), fmt(expected)});
        const double mid = 0.5 * static_cast<double>(lo + hi);
        plot.series[0].points.emplace_back(mid, static_cast<double>(hist[b]));
        plot.series[1].points.emplace_back(mid, expected);
    }
    finish(t, plot);
}

std::vector<std::string> alg_list(const std::string& fallback) {
    return qsacli::split(opt.alg.empty() ? fallback : opt.alg, ',');
}

void cmd_adversary() {
    const auto ns = n_values(std::string("100000"));
    CsvTable t({"sorter", "n", "comparisons", "replay_comparisons"});
    for (const auto& name : alg_list("m" + std::string(1, opt.model.empty() ? '1' : opt.model[0]))) {
        const qsa_sorter s = sorter_from(name);
        for (auto n : ns) {
            std::uint64_t c = 0, r = 0;
            check(qsa_killer_adversary(&s, n, &c, &r, nullptr), "--n");
            t.add({sorter_name(s), str(n), std::to_string(c), std::to_string(r)});
        }
    }
    finish(t, std::nullopt);
}

qsa_element_kind element_kind() {
    if (opt.element == "int") return QSA_ELEMENT_INT4;
    if (opt.element == "double") return QSA_ELEMENT_FLOAT8;
    if (opt.element == "record") return QSA_ELEMENT_RECORD32;
    throw UsageError("--element: must be int, double or record");
}

void cmd_bench() {
    const auto ns = n_values(std::string("100000"));
    const auto gens = qsacli::split(
        opt.generator.empty() ? "random,increasing,decreasing,equal,organpipe,random01" : opt.generator, ',');
    const auto algs = alg_list("quicksort-m1-2way,quicksort-m1-3way,quicksort-m2-2way,quicksort-m2-3way,"
                               "quicksort-m3-2way,quicksort-m3-3way,quicksort-m5-2way,quicksort-m5-3way,"
                               "heapsort,heapsort-bottom-up");
    const qsa_element_kind element = element_kind();
    if (opt.repeats < 3) throw UsageError("--repeats: must be >= 3");
    CsvTable t({"generator", "n", "sorter", "median_ms", "comparisons", "movements"});
    for (const auto& g : gens) {
        qsa_dataset_kind kind{};
        check(qsa_dataset_parse(g.c_str(), &kind), "--generator");
        for (auto n : ns) {
            for (const auto& a : algs) {
                const qsa_sorter s = sorter_from(a);
                qsa_benchmark_result r{};
                check(qsa_benchmark(&s, kind, element, n, opt.seed, opt.repeats, &r));
                t.add({g, str(n), sorter_name(s), fmt(r.median_ms), std::to_string(r.comparisons),
                       std::to_string(r.movements)});
            }
        }
    }
    finish(t, std::nullopt);
}

template <class T>
std::vector<T> read_values(std::istream& in) {
    std::vector<T> v;
    std::string tok;
    while (in >> tok) {
        std::istringstream ss(tok);
        T x{};
        if (!(ss >> x) || !ss.eof()) throw UsageError("--input: not a number: '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

template <class T>
void sort_values(const qsa_sorter& s) {
    std::vector<T> v;
    if (opt.input.empty() || opt.input == "-") {
        v = read_values<T>(std::cin);
    } else {
        std::ifstream in(opt.input);
        if (!in) throw UsageError("--input: cannot read " + opt.input);
        v = read_values<T>(in);
    }
    qsa_sort_stats st{};
    if constexpr (std::is_same_v<T, double>) check(qsa_sort_double(&s, v.data(), v.size(), &st));
    else check(qsa_sort_int32(&s, v.data(), v.size(), &st));

    const bool to_file = !opt.out.empty() && opt.out != "-";
    if (to_file || !opt.stats) {
        std::string text;
        char buf[40];
        for (const T& x : v) {
            if constexpr (std::is_same_v<T, double>) std::snprintf(buf, sizeof buf, "%.17g\n", x);
            else std::snprintf(buf, sizeof buf, "%d\n", static_cast<int>(x));
            text += buf;
        }
        emit(text);
    }
    if (opt.stats) {
        std::printf("sorter,n,comparisons,movements,max_stack_depth\n%s,%zu,%llu,%llu,%llu\n", sorter_name(s).c_str(),
                    v.size(), static_cast<unsigned long long>(st.comparisons),
                    static_cast<unsigned long long>(st.movements), static_cast<unsigned long long>(st.max_stack_depth));
    }
}

void cmd_sort() {
    const qsa_sorter s = sorter_from(opt.alg.empty() ? "quicksort-m5" : opt.alg);
    if (opt.element == "int") sort_values<std::int32_t>(s);
    else if (opt.element == "double") sort_values<double>(s);
    else throw UsageError("--element: must be int or double");
}

// ---- command-line definition ------------------------------------------

void add_model(CLI::App* c) {
    c->add_option("--model", opt.model, "Pivot model: 1, 2, 3, 4, 4a, 4b or 5")->capture_default_str();
    c->add_option("--qmin", opt.qmin, "Minimum elements per sample element (default 5; 10 for model 4a)");
    c->add_option("--nbmax", opt.nbmax, "Largest subarray sorted by insertion in model 5 (default 9)");
    c->add_option("--sample", opt.sample, "Force a median-of-medians sample size (power of 3, >= 9)");
}

void add_n(CLI::App* c, bool with_nmax) {
    c->add_option("--n", opt.n, "Size, list (100,250) or range (2..10, 2..1000:10)");
    if (with_nmax) c->add_option("--nmax", opt.nmax, "All sizes 2..nmax");
}

void add_output(CLI::App* c, bool svg) {
    c->add_option("--out", opt.out, "Output file, written atomically (default stdout)");
    c->add_option("--digits", opt.digits, "Significant digits of real numbers")->capture_default_str();
    if (svg) {
        c->add_option("--format", opt.format, "csv or svg")->capture_default_str();
        c->add_flag("--log-y", opt.log_y, "Logarithmic y axis for svg output");
    }
}

void add_table(CLI::App* c) {
    c->add_option("--threads", opt.threads, "Maximum worker threads");
    c->add_flag("--allow-long", opt.allow_long, "Permit distributions beyond n = 200 (can take hours)");
    c->add_option("--selection", opt.selection, "Selection cost: fixed (worst case) or exact")->capture_default_str();
}

int run(int argc, char** argv) {
    CLI::App app{"Comparison-count analysis of Quicksort pivot models"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qsa_version()));

    std::map<CLI::App*, void (*)()> handlers;
    auto sub = [&](const char* name, const char* desc, void (*fn)()) {
        CLI::App* c = app.add_subcommand(name, desc);
        handlers[c] = fn;
        return c;
    };

    auto* dist = sub("dist", "Frequency distribution f_n as j,frequency,probability", cmd_dist);
    add_model(dist), add_n(dist, false), add_output(dist, true), add_table(dist);

    auto* avg = sub("avg", "Average numbers of comparisons", cmd_avg);
    add_model(avg), add_n(avg, true), add_output(avg, true);
    avg->add_option("--selection", opt.selection, "Selection cost: fixed or exact")->capture_default_str();

    auto* max = sub("max", "Maximum numbers of comparisons", cmd_max);
    add_model(max), add_n(max, true), add_output(max, true);

    auto* bad = sub("badprob", "Probability of needing more than tau times the average", cmd_badprob);
    add_model(bad), add_n(bad, false), add_output(bad, true), add_table(bad);
    bad->add_option("--tau", opt.tau, "Threshold factors > 1: list or range (1.1..3:0.1)");

    auto* sigma = sub("sigma", "Standard deviation against the closed form for simple pivots", cmd_sigma);
    add_model(sigma), add_n(sigma, true), add_output(sigma, true), add_table(sigma);

    auto* kernel = sub("kernel", "Pivot position kernel p_n(i)", cmd_kernel);
    add_model(kernel), add_n(kernel, false), add_output(kernel, true);
    kernel->add_flag("--exact", opt.exact, "Exact median-of-three-medians kernel");

    auto* tables = sub("tables", "Tabulated results", cmd_tables);
    tables->add_option("--which", opt.which, "partition, histogram, averages, ratio or times")->required();
    tables->add_option("--models", opt.models, "Comma-separated model list");
    tables->add_option("--tau", opt.tau, "Threshold factors");
    tables->add_option("--interval-ms", opt.interval_ms, "Milliseconds between sorts (times)")->capture_default_str();
    tables->add_option("--qmin", opt.qmin, "Override q_min for every model");
    tables->add_option("--nbmax", opt.nbmax, "Override n_b_max for model 5");
    add_n(tables, false), add_output(tables, false), add_table(tables);

    auto* oracle = sub("oracle", "Enumerated sort histograms against the recurrence for model 1", cmd_oracle);
    add_n(oracle, false), add_output(oracle, false);

    auto* sim = sub("simulate", "Monte-Carlo final pivot positions", cmd_simulate);
    add_model(sim), add_n(sim, false), add_output(sim, true);
    sim->add_option("--trials", opt.trials, "Random permutations")->capture_default_str();
    sim->add_option("--bin", opt.bin, "Bin width")->capture_default_str();
    sim->add_option("--seed", opt.seed, "Random seed")->capture_default_str();

    auto* adv = sub("adversary", "Killer adversary comparison counts", cmd_adversary);
    add_model(adv), add_n(adv, false), add_output(adv, false);
    adv->add_option("--alg", opt.alg, "Sorters, e.g. m1,quicksort-m5-3way,heapsort");
    adv->add_flag("--threeway", opt.threeway, "Three-way partitioning for Quicksort");

    auto* bench = sub("bench", "Timing and counters on generated data", cmd_bench);
    add_n(bench, false), add_output(bench, false);
    bench->add_option("--alg", opt.alg, "Sorters (default: the Quicksort models and both Heapsorts)");
    bench->add_option("--generator", opt.generator, "random, increasing, decreasing, equal, organpipe, random01");
    bench->add_option("--element", opt.element, "int, double or record")->capture_default_str();
    bench->add_option("--repeats", opt.repeats, "Timed runs; the median is reported")->capture_default_str();
    bench->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    bench->add_option("--qmin", opt.qmin, "q_min for Quicksort");
    bench->add_option("--nbmax", opt.nbmax, "Insertion-sort cutoff for model 5");

    auto* sort = sub("sort", "Sort numbers read from a file or stdin", cmd_sort);
    sort->add_option("--alg", opt.alg, "Sorter (default quicksort-m5)");
    sort->add_flag("--threeway", opt.threeway, "Three-way partitioning");
    sort->add_option("--qmin", opt.qmin, "q_min (default 5)");
    sort->add_option("--nbmax", opt.nbmax, "Insertion-sort cutoff (default 9)");
    sort->add_option("--input", opt.input, "Whitespace-separated numbers (default stdin)");
    sort->add_option("--element", opt.element, "int or double")->capture_default_str();
    sort->add_flag("--stats", opt.stats, "Print comparisons, movements and stack depth");
    sort->add_option("--out", opt.out, "Sorted output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opt.digits < 1 || opt.digits > 17) throw UsageError("--digits: must be 1..17");
    if (opt.threads == 0) throw UsageError("--threads: must be >= 1");
    for (auto* c : app.get_subcommands()) handlers.at(c)();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const InternalError& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
