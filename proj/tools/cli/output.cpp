#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace qsacli {

namespace {

std::string escape_csv(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

// Up to about six round tick positions covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
        step = f * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) ticks.push_back(t);
    return ticks;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

} // namespace

void CsvTable::add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) out += ',';
            out += escape_csv(fields[i]);
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::string render_svg(const Plot& plot) {
    constexpr double W = 800, H = 500, L = 80, R = 170, T = 40, B = 60;
    auto ty = [&](double y) { return plot.log_y ? std::log10(y) : y; };
    auto usable = [&](double x, double y) { return std::isfinite(x) && std::isfinite(y) && (!plot.log_y || y > 0.0); };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& s : plot.series) {
        for (const auto& [x, y] : s.points) {
            if (!usable(x, y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, ty(y));
            ymax = std::max(ymax, ty(y));
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    if (plot.log_y) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    }
    const double pw = W - L - R, ph = H - T - B;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return T + ph - (v - ymin) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape_xml(plot.title) << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : linear_ticks(xmin, xmax)) {
        os << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(T + ph) << "\" x2=\"" << num(px(t)) << "\" y2=\""
           << num(T + ph + 5) << "\" stroke=\"black\"/>";
        os << "<text x=\"" << num(px(t)) << "\" y=\"" << num(T + ph + 18) << "\" text-anchor=\"middle\">"
           << tick_label(t) << "</text>\n";
    }
    std::vector<double> yt;
    if (plot.log_y) {
        const double step = std::max(1.0, std::ceil((ymax - ymin) / 8.0));
        for (double v = ymin; v <= ymax + 1e-9; v += step) yt.push_back(v);
    } else {
        yt = linear_ticks(ymin, ymax);
    }
    for (double t : yt) {
        os << "<line x1=\"" << num(L - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(L) << "\" y2=\""
           << num(py(t)) << "\" stroke=\"black\"/>";
        const std::string label = plot.log_y ? "1e" + tick_label(t) : tick_label(t);
        os << "<text x=\"" << num(L - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">" << label
           << "</text>\n";
    }
    os << "<text x=\"" << num(L + pw / 2) << "\" y=\"" << num(H - 15) << "\" text-anchor=\"middle\">"
       << escape_xml(plot.x_label) << "</text>\n";
    os << "<text transform=\"translate(18," << num(T + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape_xml(plot.y_label) << (plot.log_y ? " (log scale)" : "") << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (!usable(x, y)) continue;
            if (!first) os << ' ';
            os << num(px(x)) << ',' << num(py(ty(y)));
            first = false;
        }
        os << "\"/>\n";
        const double ly = T + 10 + 18 * static_cast<double>(k);
        os << "<line x1=\"" << num(W - R + 10) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(W - R + 35)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
        os << "<text x=\"" << num(W - R + 40) << "\" y=\"" << num(ly + 4) << "\">" << escape_xml(s.name)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write output file " + path);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("cannot write output file " + path);
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot write output file " + path);
    }
}

} // namespace qsacli
