#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pei/date.hpp"
#include "pei/error.hpp"

namespace pei::csv {

using Row = std::vector<std::string>;

// RFC 4180-style field splitting: quoted fields may contain commas and
// doubled quotes. Embedded newlines are not supported.
inline Row split_line(std::string_view line) {
    Row out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string join(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.push_back(',');
        out += quote(row[i]);
    }
    return out;
}

// Shortest round-trippable text is not needed; ten significant digits keep
// files stable and diffable.
inline std::string num(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("line " + std::to_string(line_no) + ": not a number '" + s + "'");
    }
}

struct Table {
    Row header;
    std::vector<Row> rows;
};

// Reads a CSV with a header row. Blank lines and lines starting with '#'
// are skipped.
inline Table read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r" || line[0] == '#') continue;
        if (!have_header) {
            t.header = split_line(line);
            have_header = true;
        } else {
            t.rows.push_back(split_line(line));
        }
    }
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return t;
}

inline std::string to_string(const Table& t) {
    std::string out = join(t.header) + "\n";
    for (const auto& r : t.rows) out += join(r) + "\n";
    return out;
}

inline void write(const std::string& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << to_string(t);
    if (!out) throw IoError("write failure on '" + path + "'");
}

// A dated observation sequence, as read from `date,value` files.
struct DatedSeries {
    std::vector<Date> dates;
    std::vector<double> values;
};

inline DatedSeries read_dated_series(const std::string& path) {
    const Table t = read(path);
    if (t.header.size() < 2 || t.header[0] != "date")
        throw ValidationError("'" + path + "': expected header date,value");
    DatedSeries s;
    std::size_t line_no = 1;
    for (const auto& r : t.rows) {
        ++line_no;
        if (r.size() < 2)
            throw ValidationError("'" + path + "' line " + std::to_string(line_no) + ": missing field");
        try {
            s.dates.push_back(Date::parse(r[0]));
        } catch (const ValidationError& e) {
            throw ValidationError("'" + path + "' line " + std::to_string(line_no) + ": " + e.what());
        }
        s.values.push_back(parse_double(r[1], line_no));
        if (s.dates.size() > 1 && !(s.dates[s.dates.size() - 2] < s.dates.back()))
            throw ValidationError("'" + path + "' line " + std::to_string(line_no) +
                                  ": dates must be strictly increasing");
    }
    return s;
}

inline void write_dated_series(const std::string& path, const DatedSeries& s) {
    Table t{{"date", "value"}, {}};
    for (std::size_t i = 0; i < s.dates.size(); ++i) t.rows.push_back({s.dates[i].str(), num(s.values[i])});
    write(path, t);
}

}  // namespace pei::csv
