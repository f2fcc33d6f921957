#include "ranges.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qsacli {

namespace {

std::int64_t to_int(const std::string& s, const std::string& flag) {
    std::int64_t v = 0;
    const char* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || s.empty()) {
        throw std::invalid_argument(flag + ": not an integer: '" + s + "'");
    }
    return v;
}

double to_real(const std::string& s, const std::string& flag) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument(flag + ": not a number: '" + s + "'");
    }
    return v;
}

struct RangeParts {
    std::string a, b, step;
    bool is_range = false;
};

RangeParts split_range(const std::string& item) {
    RangeParts r;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
        r.a = item;
        return r;
    }
    r.is_range = true;
    r.a = item.substr(0, dots);
    std::string rest = item.substr(dots + 2);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        r.step = rest.substr(colon + 1);
        rest.resize(colon);
    }
    r.b = rest;
    return r;
}

} // namespace

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<std::int64_t> out;
    for (const auto& item : split(text, ',')) {
        const RangeParts r = split_range(item);
        if (!r.is_range) {
            out.push_back(to_int(r.a, flag));
            continue;
        }
        const std::int64_t a = to_int(r.a, flag);
        const std::int64_t b = to_int(r.b, flag);
        const std::int64_t step = r.step.empty() ? 1 : to_int(r.step, flag);
        if (step <= 0) throw std::invalid_argument(flag + ": range step must be positive");
        if (b < a) throw std::invalid_argument(flag + ": empty range '" + item + "'");
        for (std::int64_t v = a; v <= b; v += step) out.push_back(v);
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        const RangeParts r = split_range(item);
        if (!r.is_range) {
            out.push_back(to_real(r.a, flag));
            continue;
        }
        const double a = to_real(r.a, flag);
        const double b = to_real(r.b, flag);
        if (r.step.empty()) throw std::invalid_argument(flag + ": real ranges need a step, e.g. 1.1..2:0.1");
        const double step = to_real(r.step, flag);
        if (!(step > 0.0)) throw std::invalid_argument(flag + ": range step must be positive");
        if (b < a) throw std::invalid_argument(flag + ": empty range '" + item + "'");
        const auto count = static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (std::int64_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
    }
    return out;
}

} // namespace qsacli
