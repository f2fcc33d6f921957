#include "qsa/qsa.h"

#include "qsa/analysis.hpp"
#include "qsa/distribution.hpp"
#include "qsa/empirics.hpp"
#include "qsa/numerics.hpp"
#include "qsa/pivot_models.hpp"
#include "qsa/recurrences.hpp"
#include "qsa/sorters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

struct qsa_table {
    qsa::DistributionTable table;
};

namespace {

thread_local std::string g_last_error;

struct Cancelled : std::runtime_error {
    Cancelled() : std::runtime_error("cancelled by the progress callback") {}
};

struct BufferTooSmall : std::runtime_error {
    BufferTooSmall() : std::runtime_error("output buffer too small") {}
};

qsa_status fail(qsa_status s, const char* msg) {
    g_last_error = msg;
    return s;
}

template <class F>
qsa_status guarded(F&& f) noexcept {
    try {
        f();
        return QSA_OK;
    } catch (const Cancelled& e) {
        return fail(QSA_E_CANCELLED, e.what());
    } catch (const BufferTooSmall& e) {
        return fail(QSA_E_BUFFER_TOO_SMALL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(QSA_E_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(QSA_E_DOMAIN, e.what());
    } catch (const std::out_of_range& e) {
        return fail(QSA_E_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(QSA_E_OUT_OF_MEMORY, "out of memory");
    } catch (const std::exception& e) {
        return fail(QSA_E_INTERNAL, e.what());
    } catch (...) {
        return fail(QSA_E_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

qsa::WideScalar to_ws(qsa_wide w) {
    if (!std::isfinite(w.mantissa) || w.mantissa < 0.0) throw std::invalid_argument("wide mantissa must be finite and >= 0");
    return qsa::WideScalar::from_parts(w.mantissa, w.exponent);
}

qsa_wide from_ws(const qsa::WideScalar& w) { return {w.mantissa(), w.exponent()}; }

qsa::ModelConfig to_cfg(const qsa_model* m) {
    require(m != nullptr, "model must not be null");
    qsa::ModelConfig c;
    c.model = m->model;
    c.q_min = m->q_min;
    c.n_b_max = m->n_b_max;
    c.forced_sample = m->forced_sample;
    c.validate();
    return c;
}

qsa::SelectionCostMode to_mode(qsa_selection_mode m) {
    switch (m) {
    case QSA_SELECTION_FIXED_SHIFT: return qsa::SelectionCostMode::FixedShift;
    case QSA_SELECTION_EXACT: return qsa::SelectionCostMode::ExactConvolution;
    }
    throw std::invalid_argument("unknown selection mode");
}

qsa::SorterSpec to_spec(const qsa_sorter* s) {
    require(s != nullptr, "sorter must not be null");
    qsa::SorterSpec spec;
    switch (s->kind) {
    case QSA_SORTER_QUICKSORT:
        require(s->model >= 1 && s->model <= 5, "model must be 1..5");
        require(s->q_min >= 1, "q_min must be >= 1");
        require(s->n_b_max >= 0, "n_b_max must be >= 0");
        spec.kind = qsa::SorterKind::Quicksort;
        spec.quick = qsa::QuicksortOptions::for_model(s->model, s->threeway != 0, static_cast<std::size_t>(s->q_min),
                                                      static_cast<std::size_t>(s->n_b_max));
        break;
    case QSA_SORTER_HEAPSORT: spec.kind = qsa::SorterKind::HeapsortClassic; break;
    case QSA_SORTER_HEAPSORT_BOTTOM_UP: spec.kind = qsa::SorterKind::HeapsortBottomUp; break;
    case QSA_SORTER_INSERTION: spec.kind = qsa::SorterKind::InsertionSort; break;
    default: throw std::invalid_argument("unknown sorter kind");
    }
    return spec;
}

template <class T, class Src>
void copy_out(const Src& src, T* out, std::size_t capacity, std::size_t* count) {
    require(count != nullptr, "count must not be null");
    *count = src.size();
    if (capacity < src.size() || (out == nullptr && !src.empty())) throw BufferTooSmall();
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = static_cast<T>(src[i]);
}

void copy_string(const std::string& s, char* buf, std::size_t capacity, std::size_t* count) {
    require(count != nullptr, "count must not be null");
    *count = s.size() + 1;
    if (buf == nullptr || capacity < s.size() + 1) throw BufferTooSmall();
    std::memcpy(buf, s.c_str(), s.size() + 1);
}

template <class Map>
void copy_histogram(const Map& hist, std::int64_t* keys, std::int64_t* counts, std::size_t capacity,
                    std::size_t* count) {
    require(count != nullptr, "count must not be null");
    *count = hist.size();
    if (capacity < hist.size() || keys == nullptr || counts == nullptr) throw BufferTooSmall();
    std::size_t i = 0;
    for (const auto& [k, v] : hist) {
        keys[i] = static_cast<std::int64_t>(k);
        counts[i] = static_cast<std::int64_t>(v);
        ++i;
    }
}

std::int64_t to_i64(const qsa::ExactCount& x) {
    if (x > std::numeric_limits<std::int64_t>::max()) throw std::out_of_range("value exceeds 64 bits");
    return static_cast<std::int64_t>(x);
}

template <class T>
T* require_out(T* p) {
    require(p != nullptr, "output pointer must not be null");
    return p;
}

} // namespace

extern "C" {

const char* qsa_last_error(void) { return g_last_error.c_str(); }

const char* qsa_status_name(qsa_status status) {
    switch (status) {
    case QSA_OK: return "ok";
    case QSA_E_INVALID_ARGUMENT: return "invalid argument";
    case QSA_E_DOMAIN: return "domain error";
    case QSA_E_BUFFER_TOO_SMALL: return "buffer too small";
    case QSA_E_OUT_OF_MEMORY: return "out of memory";
    case QSA_E_CANCELLED: return "cancelled";
    case QSA_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qsa_version(void) { return "1.0.0"; }

qsa_status qsa_wide_from_double(double x, qsa_wide* out) {
    return guarded([&] { *require_out(out) = from_ws(qsa::WideScalar(x)); });
}

qsa_status qsa_wide_add(qsa_wide a, qsa_wide b, qsa_wide* out) {
    return guarded([&] { *require_out(out) = from_ws(to_ws(a) + to_ws(b)); });
}

qsa_status qsa_wide_mul(qsa_wide a, qsa_wide b, qsa_wide* out) {
    return guarded([&] { *require_out(out) = from_ws(to_ws(a) * to_ws(b)); });
}

qsa_status qsa_wide_div(qsa_wide a, qsa_wide b, qsa_wide* out) {
    return guarded([&] { *require_out(out) = from_ws(to_ws(a) / to_ws(b)); });
}

qsa_status qsa_wide_compare(qsa_wide a, qsa_wide b, int* out) {
    return guarded([&] {
        const auto c = to_ws(a) <=> to_ws(b);
        *require_out(out) = c < 0 ? -1 : (c > 0 ? 1 : 0);
    });
}

qsa_status qsa_wide_log10(qsa_wide a, double* out) {
    return guarded([&] { *require_out(out) = to_ws(a).log10(); });
}

qsa_status qsa_wide_factorial(int64_t n, qsa_wide* out) {
    return guarded([&] {
        require(n >= 0, "n must be >= 0");
        *require_out(out) = from_ws(qsa::ws_factorial(n));
    });
}

qsa_status qsa_wide_to_decimal(qsa_wide a, int digits, char* buf, size_t capacity, size_t* count) {
    return guarded([&] {
        require(digits >= 1 && digits <= 17, "digits must be 1..17");
        copy_string(qsa::ws_to_decimal(to_ws(a), digits), buf, capacity, count);
    });
}

qsa_model qsa_model_default(int model) { return qsa_model{model, 5, 9, 0}; }

qsa_status qsa_model_named(const char* name, qsa_model* out) {
    return guarded([&] {
        require(name != nullptr, "name must not be null");
        const auto c = qsa::ModelConfig::named(name);
        *require_out(out) = qsa_model{c.model, c.q_min, c.n_b_max, c.forced_sample};
    });
}

qsa_status qsa_model_validate(const qsa_model* model) {
    return guarded([&] { (void)to_cfg(model); });
}

qsa_status qsa_pivot_kernel(const qsa_model* model, int64_t n, double* out, size_t capacity, size_t* count) {
    return guarded([&] {
        require(n >= 1, "n must be >= 1");
        copy_out(qsa::pivot_kernel(to_cfg(model), n), out, capacity, count);
    });
}

qsa_status qsa_pivot_kernel_exact(int64_t n, double* out, size_t capacity, size_t* count) {
    return guarded([&] { copy_out(qsa::pivot_kernel_exact_mom(n), out, capacity, count); });
}

qsa_status qsa_table_create(const qsa_model* model, qsa_selection_mode mode, unsigned threads, qsa_table** out) {
    return guarded([&] {
        require(out != nullptr, "output pointer must not be null");
        qsa::TableOptions opt;
        opt.selection = to_mode(mode);
        opt.threads = threads == 0 ? 1 : threads;
        *out = new qsa_table{qsa::DistributionTable(to_cfg(model), opt)};
    });
}

void qsa_table_destroy(qsa_table* table) { delete table; }

qsa_status qsa_table_extend(qsa_table* table, int64_t n, qsa_progress_fn progress, void* user) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        require(n >= 0, "n must be >= 0");
        qsa::ProgressFn fn;
        if (progress != nullptr) {
            fn = [progress, user](std::int64_t k, std::int64_t target) {
                if (progress(k, target, user) != 0) throw Cancelled();
            };
        }
        table->table.extend_to(n, fn);
    });
}

qsa_status qsa_table_computed(const qsa_table* table, int64_t* n) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        *require_out(n) = table->table.computed_up_to();
    });
}

qsa_status qsa_table_support(qsa_table* table, int64_t n, int64_t* lo, int64_t* hi) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        const auto& f = table->table.at(n);
        *require_out(lo) = f.lo();
        *require_out(hi) = f.hi();
    });
}

qsa_status qsa_table_weights(qsa_table* table, int64_t n, qsa_wide* out, size_t capacity, size_t* count) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        const auto w = table->table.at(n).weights();
        require(count != nullptr, "count must not be null");
        *count = w.size();
        if (out == nullptr || capacity < w.size()) throw BufferTooSmall();
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = from_ws(w[i]);
    });
}

qsa_status qsa_table_moments(qsa_table* table, int64_t n, double* mean, double* stddev) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        const auto& f = table->table.at(n);
        *require_out(mean) = qsa::mean(f).to_double();
        *require_out(stddev) = qsa::stddev_of(f).to_double();
    });
}

qsa_status qsa_table_bad_probability(qsa_table* table, int64_t n, double tau, qsa_wide* out) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        *require_out(out) = from_ws(qsa::bad_case_probability(table->table, n, tau));
    });
}

qsa_status qsa_table_probability_ratio(qsa_table* table, double tau, int64_t n_num, int64_t n_den, double* out) {
    return guarded([&] {
        require(table != nullptr, "table must not be null");
        *require_out(out) = qsa::probability_ratio(table->table, tau, n_num, n_den);
    });
}

qsa_status qsa_average_comparisons(const qsa_model* model, int64_t n_max, qsa_selection_mode mode, double* out,
                                   size_t capacity, size_t* count) {
    return guarded([&] {
        require(n_max >= 0, "n must be >= 0");
        copy_out(qsa::average_comparisons_table(to_cfg(model), n_max, to_mode(mode)), out, capacity, count);
    });
}

qsa_status qsa_max_comparisons(const qsa_model* model, int64_t n_max, int64_t* out, size_t capacity,
                               size_t* count) {
    return guarded([&] {
        require(n_max >= 0, "n must be >= 0");
        copy_out(qsa::max_comparisons_table(to_cfg(model), n_max), out, capacity, count);
    });
}

qsa_status qsa_min_comparisons(const qsa_model* model, int64_t n_max, int64_t* out, size_t capacity,
                               size_t* count) {
    return guarded([&] {
        require(n_max >= 0, "n must be >= 0");
        copy_out(qsa::min_comparisons_table(to_cfg(model), n_max), out, capacity, count);
    });
}

qsa_status qsa_iliopoulos_sigma(int64_t n, double* out) {
    return guarded([&] { *require_out(out) = qsa::iliopoulos_sigma(n); });
}

qsa_status qsa_worst_case_bound(const int64_t* maxima, size_t count, double coefficient, double exponent,
                                qsa_bound_report* out) {
    return guarded([&] {
        require(maxima != nullptr || count == 0, "maxima must not be null");
        const std::vector<std::int64_t> v(maxima, maxima + count);
        const auto r = qsa::worst_case_bound_check(v, coefficient, exponent);
        *require_out(out) = qsa_bound_report{r.max_bound_ratio, r.argmax_n, r.leading_coefficient};
    });
}

qsa_status qsa_expected_time(qsa_wide p, double interval_ms, char* buf, size_t capacity, size_t* count) {
    return guarded([&] {
        require(interval_ms > 0.0, "interval must be > 0");
        copy_string(qsa::expected_time_to_event(to_ws(p), interval_ms), buf, capacity, count);
    });
}

qsa_status qsa_sorter_parse(const char* name, qsa_sorter* out) {
    return guarded([&] {
        require(name != nullptr, "name must not be null");
        const std::string s(name);
        qsa_sorter r{QSA_SORTER_QUICKSORT, 1, 0, 5, 9};
        if (s == "heapsort" || s == "heapsort-classic") {
            r.kind = QSA_SORTER_HEAPSORT;
        } else if (s == "heapsort-bottom-up") {
            r.kind = QSA_SORTER_HEAPSORT_BOTTOM_UP;
        } else if (s == "insertion") {
            r.kind = QSA_SORTER_INSERTION;
        } else if (s.rfind("quicksort-m", 0) == 0 && s.size() >= 12 && s[11] >= '1' && s[11] <= '5') {
            r.model = s[11] - '0';
            const std::string rest = s.substr(12);
            if (rest == "-3way") r.threeway = 1;
            else if (!rest.empty() && rest != "-2way") throw std::invalid_argument("unknown sorter: " + s);
        } else {
            throw std::invalid_argument("unknown sorter: " + s);
        }
        *require_out(out) = r;
    });
}

qsa_status qsa_sorter_name(const qsa_sorter* sorter, char* buf, size_t capacity, size_t* count) {
    return guarded([&] { copy_string(to_spec(sorter).name(), buf, capacity, count); });
}

qsa_status qsa_sort_int32(const qsa_sorter* sorter, int32_t* data, size_t n, qsa_sort_stats* stats) {
    return guarded([&] {
        require(data != nullptr || n == 0, "data must not be null");
        const auto spec = to_spec(sorter);
        std::span<std::int32_t> a(data, n);
        if (stats != nullptr) {
            const auto st = qsa::run_sorter(spec, a);
            *stats = qsa_sort_stats{st.comparisons, st.movements, static_cast<std::uint64_t>(st.max_stack_depth)};
        } else {
            qsa::run_sorter_plain(spec, a);
        }
    });
}

qsa_status qsa_sort_double(const qsa_sorter* sorter, double* data, size_t n, qsa_sort_stats* stats) {
    return guarded([&] {
        require(data != nullptr || n == 0, "data must not be null");
        for (std::size_t i = 0; i < n; ++i) require(!std::isnan(data[i]), "data must not contain NaN");
        const auto spec = to_spec(sorter);
        std::span<double> a(data, n);
        if (stats != nullptr) {
            const auto st = qsa::run_sorter(spec, a);
            *stats = qsa_sort_stats{st.comparisons, st.movements, static_cast<std::uint64_t>(st.max_stack_depth)};
        } else {
            qsa::run_sorter_plain(spec, a);
        }
    });
}

qsa_status qsa_partition_stats(qsa_partition_scheme scheme, int64_t n, qsa_partition_summary* summary,
                               int64_t* keys, int64_t* counts, size_t capacity, size_t* count) {
    return guarded([&] {
        require(scheme >= QSA_PARTITION_SWEEP && scheme <= QSA_PARTITION_NEW, "unknown partition scheme");
        const auto r = qsa::enumerate_partition_stats(static_cast<qsa::PartitionScheme>(scheme), n);
        if (summary != nullptr) {
            *summary = qsa_partition_summary{to_i64(r.permutations),
                                             to_i64(numerator(r.comparisons_avg)),
                                             to_i64(denominator(r.comparisons_avg)),
                                             to_i64(numerator(r.movements_avg)),
                                             to_i64(denominator(r.movements_avg))};
        }
        if (count != nullptr) copy_histogram(r.comparison_histogram, keys, counts, capacity, count);
    });
}

qsa_status qsa_sort_histogram(const qsa_sorter* sorter, int64_t n, int64_t* keys, int64_t* counts,
                              size_t capacity, size_t* count) {
    return guarded([&] {
        const auto spec = to_spec(sorter);
        require(spec.kind == qsa::SorterKind::Quicksort, "histograms are defined for Quicksort only");
        copy_histogram(qsa::enumerate_sort_histogram(spec.quick, n), keys, counts, capacity, count);
    });
}

qsa_status qsa_simulate_pivots(const qsa_model* model, int64_t n, int64_t trials, int64_t bin, uint64_t seed,
                               uint64_t* out, size_t capacity, size_t* count) {
    return guarded([&] {
        copy_out(qsa::simulate_pivot_positions(to_cfg(model), n, trials, bin, seed), out, capacity, count);
    });
}

qsa_status qsa_killer_adversary(const qsa_sorter* sorter, int64_t n, uint64_t* comparisons,
                                uint64_t* replay_comparisons, int32_t* input) {
    return guarded([&] {
        const auto r = qsa::killer_adversary(to_spec(sorter), n);
        if (comparisons != nullptr) *comparisons = r.comparisons;
        if (replay_comparisons != nullptr) *replay_comparisons = r.replay_comparisons;
        if (input != nullptr) std::copy(r.input.begin(), r.input.end(), input);
    });
}

qsa_status qsa_dataset_parse(const char* name, qsa_dataset_kind* out) {
    return guarded([&] {
        require(name != nullptr, "name must not be null");
        *require_out(out) = static_cast<qsa_dataset_kind>(qsa::parse_dataset_kind(name));
    });
}

qsa_status qsa_generate_dataset(qsa_dataset_kind kind, int64_t n, uint64_t seed, int32_t* out) {
    return guarded([&] {
        require(kind >= QSA_DATA_RANDOM && kind <= QSA_DATA_RANDOM01, "unknown dataset kind");
        require(n >= 0, "n must be >= 0");
        require(out != nullptr || n == 0, "output must not be null");
        qsa::DatasetSpec spec;
        spec.kind = static_cast<qsa::DatasetKind>(kind);
        spec.n = n;
        spec.seed = seed;
        const auto v = qsa::generate_dataset(spec);
        std::copy(v.begin(), v.end(), out);
    });
}

qsa_status qsa_benchmark(const qsa_sorter* sorter, qsa_dataset_kind kind, qsa_element_kind element, int64_t n,
                         uint64_t seed, int repeats, qsa_benchmark_result* out) {
    return guarded([&] {
        require(kind >= QSA_DATA_RANDOM && kind <= QSA_DATA_RANDOM01, "unknown dataset kind");
        require(element >= QSA_ELEMENT_INT4 && element <= QSA_ELEMENT_RECORD32, "unknown element kind");
        require(n >= 0, "n must be >= 0");
        qsa::DatasetSpec spec;
        spec.kind = static_cast<qsa::DatasetKind>(kind);
        spec.n = n;
        spec.seed = seed;
        spec.element = static_cast<qsa::ElementKind>(element);
        const auto r = qsa::benchmark(to_spec(sorter), spec, repeats);
        *require_out(out) = qsa_benchmark_result{r.median_ms, r.comparisons, r.movements};
    });
}

} // extern "C"
