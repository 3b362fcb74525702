#pragma once

// Plain `key = value` run configuration. Lines may carry `#` comments;
// blank lines are ignored. Keys are matched exactly and unknown keys are
// rejected with their line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oscwell/evolve.hpp"

namespace oscwell {

struct Setting {
    std::string key;
    std::string value;
    std::string origin;  // "line 3", "--set", ...
};

struct RunConfig {
    int l = 0;
    int n_init = 1;
    InitialCondition::Kind init_kind = InitialCondition::Kind::eigen;
    double epsilon = 0.01;
    std::optional<double> nu;  // defaults to the E2 - E1 of l
    std::vector<double> nu_list;
    std::vector<double> eps_list;
    int grid_points = default_grid_points;
    std::optional<double> dt;     // unset: default_time_step(nu)
    std::optional<double> t_max;  // unset: chosen by the subcommand
    int sample_stride = default_sample_stride;
    int basis_size = default_basis_size;
    int levels = 3;  // rows printed by `eigen`
    int threads = 0;
    std::string output;

    /// One entry per default that was applied, e.g. "N = 2000 (default)".
    std::vector<std::string> provenance;

    [[nodiscard]] InitialCondition initial() const;
};

/// Names accepted in a configuration.
[[nodiscard]] const std::vector<std::string>& config_keys();

/// Splits text into settings; checks syntax and key names.
[[nodiscard]] std::vector<Setting> read_settings(std::string_view text);

/// Parses one `key=value` override as given on the command line.
[[nodiscard]] Setting read_override(std::string_view assignment);

/// Converts settings into a validated configuration; later settings win.
[[nodiscard]] RunConfig resolve_config(const std::vector<Setting>& settings);

[[nodiscard]] RunConfig parse_config(std::string_view text);

/// Expands "start:stop:count" (inclusive, evenly spaced) or "a, b, c".
[[nodiscard]] std::vector<double> parse_value_list(std::string_view text);

}  // namespace oscwell
