// csv.hpp — negativity tables as CSV, 17 significant digits

#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tripneg/errors.hpp"
#include "tripneg/runner.hpp"

namespace tripneg {

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace detail

inline std::string csv_header(const Table& table) {
    std::string h = table.axis + ",n1_23,n2_13,n3_12,n3";
    if (table.dual) h += ",solver_gap,closedform_gap";
    return h;
}

inline void write_csv(const Table& table, std::ostream& out) {
    out << csv_header(table) << '\n';
    for (const auto& row : table.rows) {
        const auto& r = row.record;
        out << detail::fmt17(r.t) << ',' << detail::fmt17(r.n1_23) << ',' << detail::fmt17(r.n2_13)
            << ',' << detail::fmt17(r.n3_12) << ',' << detail::fmt17(r.n3);
        if (table.dual) {
            out << ',' << detail::fmt17(row.solver_gap) << ',' << detail::fmt17(row.closedform_gap);
        }
        out << '\n';
    }
}

inline void write_csv(const Table& table, const std::string& path) {
    const std::filesystem::path fp(path);
    std::error_code ec;
    if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path(), ec);
    std::ofstream out(fp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
    write_csv(table, out);
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline Table read_csv(std::istream& in, const std::string& origin = "<stream>") {
    std::string line;
    if (!std::getline(in, line)) throw IoError(origin + ": empty file, missing header");
    const auto header = detail::split_commas(line);
    Table table;
    if (header.size() != 5 && header.size() != 7) {
        throw IoError(origin + ": unexpected header '" + line + "'");
    }
    table.axis = header[0];
    table.dual = header.size() == 7;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = detail::split_commas(line);
        if (cells.size() != header.size()) {
            throw IoError(origin + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(header.size()) + " columns");
        }
        std::vector<double> v;
        for (const auto& c : cells) {
            char* end = nullptr;
            const double x = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0') {
                throw IoError(origin + ":" + std::to_string(lineno) + ": bad number '" + c + "'");
            }
            v.push_back(x);
        }
        TableRow row;
        row.record = {v[0], v[1], v[2], v[3], v[4]};
        if (table.dual) {
            row.solver_gap = v[5];
            row.closedform_gap = v[6];
        }
        table.rows.push_back(row);
    }
    return table;
}

inline Table read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_csv(in, path);
}

}  // namespace tripneg
