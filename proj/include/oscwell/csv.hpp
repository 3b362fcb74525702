#pragma once

// CSV output for time series and sweeps. Numbers are written in the
// shortest decimal form that reads back to the same double, so re-emitting
// a parsed file is byte-identical.

#include <string>
#include <string_view>
#include <vector>

#include "oscwell/evolve.hpp"
#include "oscwell/scan.hpp"

namespace oscwell {

[[nodiscard]] std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const;
};

[[nodiscard]] std::string format_csv(const CsvTable& table);
[[nodiscard]] CsvTable parse_csv(std::string_view text);

/// Columns t, norm, E_fixed, U, R_s, p1..pM.
[[nodiscard]] CsvTable timeseries_table(const TimeSeries& series);
[[nodiscard]] TimeSeries timeseries_from_table(const CsvTable& table);

/// Columns nu, eps, l, umax_scaled, t_at_max; failed points carry nan.
[[nodiscard]] CsvTable scan_table(const ScanResult& result);
[[nodiscard]] ScanResult scan_from_table(const CsvTable& table);

void emit_timeseries_csv(const TimeSeries& series, const std::string& path);
void emit_scan_csv(const ScanResult& result, const std::string& path);

[[nodiscard]] std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace oscwell
