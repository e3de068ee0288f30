// morphglide -- CSV reading/writing with `#` comment headers.
//
// All numeric output goes through fmt_g() so that repeated runs of the
// pipeline produce byte-identical files.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "morphglide/errors.hpp"

namespace morphglide::csv {

// Shortest round-trippable representation, locale-independent.
inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::vector<std::string> comments;  // without leading '#'
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline Table read(std::istream& in, const std::string& origin = "<stream>") {
    Table t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') {
            t.comments.push_back(line.substr(1));
            continue;
        }
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                size_t pos = 0;
                row.push_back(std::stod(c, &pos));
                if (pos != c.size()) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw ParseError(origin + ":" + std::to_string(lineno) +
                                 ": not a number: '" + c + "'");
            }
        }
        if (row.size() != t.header.size())
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": expected " + std::to_string(t.header.size()) +
                             " columns, got " + std::to_string(row.size()));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return read(f, path);
}

inline void write(std::ostream& out, const Table& t) {
    for (const auto& c : t.comments) out << '#' << c << '\n';
    for (size_t i = 0; i < t.header.size(); ++i)
        out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << fmt_g(row[i]);
        out << '\n';
    }
}

inline void write_file(const std::string& path, const Table& t) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    write(f, t);
}

}  // namespace morphglide::csv
