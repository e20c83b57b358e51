#pragma once

// Sweep output: CSV tables and SVG line plots.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sweep.hpp"

namespace paoi_jam {

inline constexpr const char* kCsvHeader =
    "swept_value,engine,p_busy,p_j,p_loss,paoi,paoi_ci,jammer_avg_power,series";

/// Nine significant digits, locale independent.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.swept_value) << ',' << to_string(r.engine) << ','
            << format_number(r.p_busy) << ',' << format_number(r.p_j) << ','
            << format_number(r.p_loss) << ',' << format_number(r.paoi) << ','
            << (r.paoi_ci ? format_number(*r.paoi_ci) : "") << ','
            << format_number(r.jammer_avg_power) << ',' << r.series << '\n';
    }
    return out.str();
}

inline std::vector<ResultRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ParseError("CSV header mismatch", 1);
    }
    std::vector<ResultRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (cells.size() != 9) {
            throw ParseError("expected 9 columns, got " + std::to_string(cells.size()), line_no);
        }
        const auto num = [&](const std::string& s) {
            try {
                std::size_t used = 0;
                const double v = std::stod(s, &used);
                if (used != s.size()) {
                    throw std::invalid_argument(s);
                }
                return v;
            } catch (const std::exception&) {
                throw ParseError("bad number '" + s + "'", line_no);
            }
        };
        ResultRow r;
        r.swept_value = num(cells[0]);
        if (cells[1] == "analytic") {
            r.engine = Engine::analytic;
        } else if (cells[1] == "simulation") {
            r.engine = Engine::simulation;
        } else {
            throw ParseError("unknown engine '" + cells[1] + "'", line_no);
        }
        r.p_busy = num(cells[2]);
        r.p_j = num(cells[3]);
        r.p_loss = num(cells[4]);
        r.paoi = num(cells[5]);
        if (!cells[6].empty()) {
            r.paoi_ci = num(cells[6]);
        }
        r.jammer_avg_power = num(cells[7]);
        r.series = cells[8];
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
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

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

/// Line plot with one polyline per (series, engine) pair.
inline std::string to_svg(const std::vector<ResultRow>& rows, const std::string& metric,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& title = "") {
    if (rows.empty()) {
        throw DomainError("cannot plot an empty table");
    }
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> lines;
    for (const auto& r : rows) {
        const std::string key = r.series + " (" + to_string(r.engine) + ")";
        if (!lines.count(key)) {
            order.push_back(key);
        }
        lines[key].emplace_back(r.swept_value, r.metric(metric));
    }
    double xmin = rows.front().swept_value, xmax = xmin;
    double ymin = rows.front().metric(metric), ymax = ymin;
    for (const auto& r : rows) {
        xmin = std::min(xmin, r.swept_value);
        xmax = std::max(xmax, r.swept_value);
        ymin = std::min(ymin, r.metric(metric));
        ymax = std::max(ymax, r.metric(metric));
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    const double pad = ymax > ymin ? 0.05 * (ymax - ymin) : std::max(0.5, 0.05 * std::abs(ymax));
    ymin -= pad;
    ymax += pad;

    const double width = 720, height = 460;
    const double left = 80, right = 220, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;
    const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };
    static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\">"
            << detail::xml_escape(title) << "</text>\n";
    }
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        svg << "<text x=\"" << detail::fmt2(sx(xv)) << "\" y=\"" << top + ph + 18
            << "\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << detail::fmt2(sy(yv) + 4)
            << "\" text-anchor=\"end\">" << format_number(yv) << "</text>\n";
    }
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\">" << detail::xml_escape(x_label) << "</text>\n";
    svg << "<text transform=\"translate(18," << top + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << detail::xml_escape(y_label)
        << "</text>\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
        const char* color = palette[i % std::size(palette)];
        svg << "<polyline class=\"series\" data-series=\"" << detail::xml_escape(order[i])
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (const auto& [x, y] : lines[order[i]]) {
            svg << (first ? "" : " ") << detail::fmt2(sx(x)) << ',' << detail::fmt2(sy(y));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = top + 14 + 18 * static_cast<double>(i);
        svg << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << left + pw + 36 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << left + pw + 42 << "\" y=\"" << ly << "\">"
            << detail::xml_escape(order[i]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

enum class OutputFormat { csv, svg };

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

/// Writes the table in the requested format to `path`.
inline void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path,
                 const SweepSpec& spec) {
    if (rows.empty()) {
        throw DomainError("refusing to emit an empty table");
    }
    write_file(path, format == OutputFormat::csv
                         ? to_csv(rows)
                         : to_svg(rows, spec.metric, spec.x_label, spec.y_label, spec.name));
}

}  // namespace paoi_jam
