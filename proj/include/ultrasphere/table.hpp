#pragma once

// Column-oriented output table with deterministic CSV/JSON serialization.
// Figures and verification reports are emitted through this one path so the
// byte-identical-output guarantee has a single owner.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "ultrasphere/common.hpp"

namespace ultrasphere {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> r) {
        if (r.size() != columns.size()) throw domain_error("Table: row width mismatch");
        rows.push_back(std::move(r));
    }
};

// Shortest round-trip representation; "%.17g" is stable across runs for a
// fixed binary.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Compact form for labels and column names.
inline std::string format_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

inline std::string to_json(const Table& t) {
    std::string out = "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += r ? ",\n {" : "\n {";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out += ", ";
            out += '"' + t.columns[c] + "\": ";
            const double v = t.rows[r][c];
            out += std::isfinite(v) ? format_double(v) : "null";
        }
        out += '}';
    }
    out += "\n]\n";
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw numeric_error("cannot open output file: " + path);
    os << content;
    if (!os) throw numeric_error("write failed: " + path);
}

}  // namespace ultrasphere
