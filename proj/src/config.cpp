#include "oscwell/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "oscwell/error.hpp"

namespace oscwell {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
    throw ConfigError(origin + ": " + message);
}

void check_key(const std::string& key, const std::string& origin) {
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        fail(origin, "unknown key '" + key + "'");
    }
}

double to_double(const Setting& s) {
    const std::string_view v = s.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        fail(s.origin, "malformed number '" + s.value + "' for " + s.key);
    }
    return out;
}

int to_int(const Setting& s) {
    const std::string_view v = s.value;
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        fail(s.origin, "malformed integer '" + s.value + "' for " + s.key);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "l",  "n_init", "init_kind", "epsilon",       "nu", "nu_list", "eps_list", "N",
        "dt", "t_max",  "levels",    "sample_stride", "M",  "threads", "output",
    };
    return keys;
}

InitialCondition RunConfig::initial() const {
    switch (init_kind) {
        case InitialCondition::Kind::plus:
            return InitialCondition::plus();
        case InitialCondition::Kind::minus:
            return InitialCondition::minus();
        default:
            return InitialCondition::eigenstate(n_init);
    }
}

std::vector<Setting> read_settings(std::string_view text) {
    std::vector<Setting> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        const std::string origin = "line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(origin, "expected 'key = value'");
        }
        Setting s{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                  origin};
        if (s.key.empty()) {
            fail(origin, "missing key");
        }
        check_key(s.key, origin);
        if (s.value.empty()) {
            fail(origin, "missing value for " + s.key);
        }
        out.push_back(std::move(s));
        if (end == text.size()) {
            break;
        }
    }
    return out;
}

Setting read_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        fail("--set", "expected key=value, got '" + std::string(assignment) + "'");
    }
    Setting s{std::string(trim(assignment.substr(0, eq))),
              std::string(trim(assignment.substr(eq + 1))), "--set " + std::string(assignment)};
    check_key(s.key, s.origin);
    if (s.value.empty()) {
        fail(s.origin, "missing value for " + s.key);
    }
    return s;
}

std::vector<double> parse_value_list(std::string_view text) {
    auto number = [&](std::string_view v) {
        v = trim(v);
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
            throw ConfigError("malformed list entry '" + std::string(v) + "'");
        }
        return out;
    };
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
            throw ConfigError("range must read start:stop:count");
        }
        const double start = number(text.substr(0, a));
        const double stop = number(text.substr(a + 1, b - a - 1));
        const double count_d = number(text.substr(b + 1));
        const int count = static_cast<int>(count_d);
        if (count < 1 || count != count_d) {
            throw ConfigError("range count must be a positive integer");
        }
        if (count == 1) {
            return {start};
        }
        for (int i = 0; i < count; ++i) {
            out.push_back(i + 1 == count ? stop : start + (stop - start) * i / (count - 1));
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        out.push_back(number(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

RunConfig resolve_config(const std::vector<Setting>& settings) {
    std::map<std::string, Setting> last;
    for (const auto& s : settings) {
        check_key(s.key, s.origin);
        last[s.key] = s;
    }
    RunConfig cfg;
    auto has = [&](const char* key) { return last.count(key) != 0; };
    auto get = [&](const char* key) -> const Setting& { return last.at(key); };
    auto note_default = [&](const std::string& entry) {
        cfg.provenance.push_back(entry + " (default)");
    };
    auto list = [&](const Setting& s) {
        try {
            return parse_value_list(s.value);
        } catch (const ConfigError& e) {
            fail(s.origin, std::string(e.what()) + " for " + s.key);
        }
    };

    if (has("l")) {
        cfg.l = to_int(get("l"));
        if (cfg.l < 0 || cfg.l > max_angular_momentum) {
            fail(get("l").origin, "l must be in [0, 3]");
        }
    } else {
        note_default("l = 0");
    }
    if (has("M")) {
        cfg.basis_size = to_int(get("M"));
        if (cfg.basis_size < 2) {
            fail(get("M").origin, "M must be at least 2");
        }
    } else {
        note_default("M = " + std::to_string(default_basis_size));
    }
    if (has("n_init")) {
        cfg.n_init = to_int(get("n_init"));
        if (cfg.n_init < 1 || cfg.n_init > cfg.basis_size) {
            fail(get("n_init").origin, "n_init must be in [1, M]");
        }
    } else {
        note_default("n_init = 1");
    }
    if (has("init_kind")) {
        const auto& s = get("init_kind");
        if (s.value == "eigen") {
            cfg.init_kind = InitialCondition::Kind::eigen;
        } else if (s.value == "plus") {
            cfg.init_kind = InitialCondition::Kind::plus;
        } else if (s.value == "minus") {
            cfg.init_kind = InitialCondition::Kind::minus;
        } else {
            fail(s.origin, "init_kind must be eigen, plus or minus");
        }
    } else {
        note_default("init_kind = eigen");
    }
    auto check_eps = [&](double e, const Setting& s) {
        if (!(e >= 0.0 && e < 1.0)) {
            fail(s.origin, "epsilon must satisfy 0 <= epsilon < 1");
        }
    };
    if (has("epsilon")) {
        cfg.epsilon = to_double(get("epsilon"));
        check_eps(cfg.epsilon, get("epsilon"));
    } else {
        note_default("epsilon = 0.01");
    }
    if (has("nu")) {
        cfg.nu = to_double(get("nu"));
        if (!(*cfg.nu > 0.0)) {
            fail(get("nu").origin, "nu must be positive");
        }
    } else {
        note_default("nu = E2 - E1 of l");
    }
    if (has("nu_list")) {
        cfg.nu_list = list(get("nu_list"));
        for (const double v : cfg.nu_list) {
            if (!(v > 0.0)) {
                fail(get("nu_list").origin, "frequencies must be positive");
            }
        }
        if (!std::is_sorted(cfg.nu_list.begin(), cfg.nu_list.end())) {
            fail(get("nu_list").origin, "frequencies must be ascending");
        }
    }
    if (has("eps_list")) {
        cfg.eps_list = list(get("eps_list"));
        for (const double v : cfg.eps_list) {
            check_eps(v, get("eps_list"));
        }
    }
    if (has("N")) {
        cfg.grid_points = to_int(get("N"));
        if (cfg.grid_points < 3) {
            fail(get("N").origin, "N must be at least 3");
        }
    } else {
        note_default("N = " + std::to_string(default_grid_points));
    }
    if (has("dt")) {
        cfg.dt = to_double(get("dt"));
        if (!(*cfg.dt > 0.0)) {
            fail(get("dt").origin, "dt must be positive");
        }
    } else {
        note_default("dt = min(1e-4, period/2000)");
    }
    if (has("t_max")) {
        cfg.t_max = to_double(get("t_max"));
        if (!(*cfg.t_max > 0.0)) {
            fail(get("t_max").origin, "t_max must be positive");
        }
    } else {
        note_default("t_max = per subcommand");
    }
    if (has("sample_stride")) {
        cfg.sample_stride = to_int(get("sample_stride"));
        if (cfg.sample_stride < 1) {
            fail(get("sample_stride").origin, "sample_stride must be >= 1");
        }
    } else {
        note_default("sample_stride = " + std::to_string(default_sample_stride));
    }
    if (has("levels")) {
        cfg.levels = to_int(get("levels"));
        if (cfg.levels < 1) {
            fail(get("levels").origin, "levels must be >= 1");
        }
    }
    if (has("threads")) {
        cfg.threads = to_int(get("threads"));
        if (cfg.threads < 0) {
            fail(get("threads").origin, "threads must be >= 0");
        }
    } else {
        note_default("threads = 0");
    }
    if (has("output")) {
        cfg.output = get("output").value;
    }
    return cfg;
}

RunConfig parse_config(std::string_view text) { return resolve_config(read_settings(text)); }

}  // namespace oscwell
