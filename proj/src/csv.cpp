#include "oscwell/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "oscwell/error.hpp"

namespace oscwell {

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return {buf.data(), ptr};
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::invalid_argument("CSV has no column '" + std::string(name) + "'");
}

std::string format_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += (i ? "," : "") + table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t pos = 0;
    bool first = true;
    int line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t f = 0;
        while (true) {
            const auto comma = line.find(',', f);
            fields.push_back(line.substr(f, comma == std::string_view::npos ? line.npos : comma - f));
            if (comma == std::string_view::npos) {
                break;
            }
            f = comma + 1;
        }
        if (first) {
            for (auto h : fields) {
                table.header.emplace_back(h);
            }
            first = false;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                        ": field count differs from header");
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto v : fields) {
            double d = 0.0;
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
            if (ec != std::errc() || ptr != v.data() + v.size()) {
                throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                            ": malformed number '" + std::string(v) + "'");
            }
            row.push_back(d);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable timeseries_table(const TimeSeries& series) {
    CsvTable table;
    table.header = {"t", "norm", "E_fixed", "U", "R_s"};
    for (int n = 1; n <= series.levels; ++n) {
        table.header.push_back("p" + std::to_string(n));
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::vector<double> row = {series.t[i], series.norm[i], series.e_fixed[i], series.u[i],
                                   series.rs[i]};
        row.insert(row.end(), series.populations[i].begin(), series.populations[i].end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

TimeSeries timeseries_from_table(const CsvTable& table) {
    TimeSeries ts;
    const std::size_t base = 5;
    if (table.header.size() < base || table.header[0] != "t" || table.header[2] != "E_fixed") {
        throw std::invalid_argument("not a time-series CSV");
    }
    ts.levels = static_cast<int>(table.header.size() - base);
    for (const auto& row : table.rows) {
        ts.t.push_back(row[0]);
        ts.norm.push_back(row[1]);
        ts.e_fixed.push_back(row[2]);
        ts.u.push_back(row[3]);
        ts.rs.push_back(row[4]);
        ts.populations.emplace_back(row.begin() + base, row.end());
    }
    return ts;
}

CsvTable scan_table(const ScanResult& result) {
    CsvTable table;
    table.header = {"nu", "eps", "l", "umax_scaled", "t_at_max"};
    for (const auto& p : result.points) {
        table.rows.push_back({p.nu, p.eps, static_cast<double>(p.l), p.umax_scaled, p.t_at_max});
    }
    return table;
}

ScanResult scan_from_table(const CsvTable& table) {
    const auto nu = table.column("nu");
    const auto eps = table.column("eps");
    const auto l = table.column("l");
    const auto umax = table.column("umax_scaled");
    const auto tmax = table.column("t_at_max");
    ScanResult result;
    for (const auto& row : table.rows) {
        ScanPoint p;
        p.nu = row[nu];
        p.eps = row[eps];
        p.l = static_cast<int>(row[l]);
        p.umax_scaled = row[umax];
        p.t_at_max = row[tmax];
        p.ok = std::isfinite(p.umax_scaled);
        result.points.push_back(p);
    }
    return result;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

void emit_timeseries_csv(const TimeSeries& series, const std::string& path) {
    write_text_file(path, format_csv(timeseries_table(series)));
}

void emit_scan_csv(const ScanResult& result, const std::string& path) {
    write_text_file(path, format_csv(scan_table(result)));
}

}  // namespace oscwell
