#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace sqw::output {

/// Fixed 17 significant digits so identical runs produce identical bytes.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// `step,node,probability` rows; history[l] is the distribution after
/// first_step + l steps.
inline std::string distribution_csv(const std::vector<std::vector<double>> &history,
                                    std::size_t first_step = 0) {
    std::string out = "step,node,probability\n";
    for (std::size_t step = 0; step < history.size(); ++step) {
        for (std::size_t n = 0; n < history[step].size(); ++n) {
            out += std::to_string(first_step + step);
            out += ',';
            out += std::to_string(n);
            out += ',';
            out += fmt17(history[step][n]);
            out += '\n';
        }
    }
    return out;
}

/// Bar chart of a probability distribution (x = node, y = probability).
inline std::string svg_bar_plot(const std::vector<double> &values, const std::string &title) {
    constexpr double width = 800.0, height = 400.0;
    constexpr double left = 60.0, right = 20.0, top = 40.0, bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double ymax = values.empty() ? 1.0 : std::max(1e-300, *std::max_element(values.begin(), values.end()));
    const double bar_w = values.empty() ? 0.0 : plot_w / static_cast<double>(values.size());

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";
    s << "<path d=\"M" << left << ' ' << top << " V" << top + plot_h << " H" << left + plot_w
      << "\" stroke=\"black\" fill=\"none\"/>\n";
    s << "<path d=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double h = plot_h * values[i] / ymax;
        if (h <= 0.0) {
            continue;
        }
        s << 'M' << left + bar_w * static_cast<double>(i) << ' ' << top + plot_h << " h"
          << std::max(bar_w * 0.8, 0.5) << " v" << -h << " h" << -std::max(bar_w * 0.8, 0.5)
          << "Z ";
    }
    s << "\" fill=\"steelblue\"/>\n";
    s << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">node</text>\n";
    s << "<text x=\"" << left - 8 << "\" y=\"" << top + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt17(ymax).substr(0, 6)
      << "</text>\n";
    s << "<text x=\"" << left - 8 << "\" y=\"" << top + plot_h
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
    s << "</svg>\n";
    return s.str();
}

} // namespace sqw::output
