// CSV tables, SVG line plots and atomic file output for the command-line tool.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qsacli {

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<Series> series;
};

// Points with non-finite coordinates, or y <= 0 on a log axis, are skipped.
std::string render_svg(const Plot& plot);

// Writes through a temporary file in the same directory followed by a rename.
// Throws std::runtime_error when the file cannot be written.
void write_atomically(const std::string& path, const std::string& content);

} // namespace qsacli
