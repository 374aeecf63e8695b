// io.hpp — CSV tables with '#'-metadata headers and minimal SVG line plots.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hetspec::cli {

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Fixed formatting, 12 significant digits; re-runs are byte-identical.
void write_csv(const std::string& path, const CsvTable& table);

struct SvgSeries {
    std::string label;
    std::string color{"#1f6fb2"};
    std::vector<double> x, y;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series);

} // namespace hetspec::cli
