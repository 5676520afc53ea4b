#include "rslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rslab {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string to_csv(const std::vector<CsvColumn>& columns) {
    std::ostringstream out;
    std::size_t rows = 0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c].name;
        rows = std::max(rows, columns[c].values->size());
    }
    out << "\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ",";
            if (i < columns[c].values->size()) out << num((*columns[c].values)[i]);
        }
        out << "\n";
    }
    return out.str();
}

std::string to_svg(const std::vector<double>& x, const std::vector<CsvColumn>& series,
                   const std::string& title) {
    const int W = 720, H = 480, ML = 60, MR = 20, MT = 40, MB = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto& s : series)
        for (double v : *s.values) {
            if (!std::isfinite(v)) continue;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
        << H - MB << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ML << "\" y=\"" << H - 8 << "\" font-size=\"11\">" << num(xmin)
        << "</text><text x=\"" << W - MR << "\" y=\"" << H - 8
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(xmax) << "</text>\n";
    out << "<text x=\"4\" y=\"" << H - MB << "\" font-size=\"11\">" << num(ymin)
        << "</text><text x=\"4\" y=\"" << MT + 10 << "\" font-size=\"11\">" << num(ymax)
        << "</text>\n";
    int ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 5] << "\" points=\"";
        const std::size_t n = std::min(x.size(), s.values->size());
        for (std::size_t i = 0; i < n; ++i) {
            const double v = (*s.values)[i];
            if (!std::isfinite(v)) continue;
            out << px(x[i]) << "," << py(v) << " ";
        }
        out << "\"/>\n<text x=\"" << W - MR - 6 << "\" y=\"" << MT + 16 + 14 * ci
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[ci % 5] << "\">"
            << s.name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace rslab
