#pragma once

// Minimal self-contained SVG line charts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "pei/date.hpp"
#include "pei/error.hpp"

namespace pei::svg {

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string line_chart(const std::string& title, const std::vector<Date>& dates,
                              const std::vector<double>& values) {
    constexpr double W = 640, H = 320, L = 60, R = 20, T = 36, B = 40;
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", W, H,
                  W, H);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + std::to_string(static_cast<int>(W / 2)) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + escape(title) +
           "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#888\"/>\n", L, T,
                  W - L - R, H - T - B);
    out += buf;
    if (values.empty()) return out + "</svg>\n";

    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (!(hi > lo)) {
        lo -= 1.0;
        hi += 1.0;
    }
    const std::size_t n = values.size();
    auto px = [&](std::size_t i) { return L + (n > 1 ? (W - L - R) * static_cast<double>(i) / (n - 1) : 0.0); };
    auto py = [&](double v) { return T + (H - T - B) * (hi - v) / (hi - lo); };

    out += "<polyline fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(i), py(values[i]));
        out += buf;
    }
    out += "\"/>\n";
    auto label = [&](double x, double y, const char* anchor, const std::string& text) {
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"%s\" font-family=\"sans-serif\" font-size=\"10\">",
                      x, y, anchor);
        out += buf + escape(text) + "</text>\n";
    };
    std::snprintf(buf, sizeof buf, "%.4g", hi);
    label(L - 4, T + 4, "end", buf);
    std::snprintf(buf, sizeof buf, "%.4g", lo);
    label(L - 4, H - B, "end", buf);
    if (!dates.empty()) {
        label(L, H - B + 16, "start", dates.front().str());
        label(W - R, H - B + 16, "end", dates.back().str());
    }
    return out + "</svg>\n";
}

inline void write_line_chart(const std::string& path, const std::string& title, const std::vector<Date>& dates,
                             const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << line_chart(title, dates, values);
}

}  // namespace pei::svg
