#include "fluxpulse/config.hpp"

#include "fluxpulse/csv_io.hpp"
#include "fluxpulse/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace fluxpulse {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct KeyBinding {
    std::function<void(ExperimentConfig&, std::string_view, const std::string&)> set;
};

double parse_double(std::string_view v, const std::string& where) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(where + ": cannot parse number '" + std::string(v) + "'");
    if (!std::isfinite(out))
        throw ConfigError(where + ": value must be finite");
    return out;
}

int parse_int(std::string_view v, const std::string& where) {
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(where + ": cannot parse integer '" + std::string(v) + "'");
    return out;
}

const std::map<std::string, KeyBinding>& bindings() {
    static const std::map<std::string, KeyBinding> table = [] {
        std::map<std::string, KeyBinding> m;
        const auto dbl = [&m](const std::string& key, double ExperimentConfig::* field) {
            m[key] = {[field](ExperimentConfig& c, std::string_view v, const std::string& w) {
                c.*field = parse_double(v, w);
            }};
        };
        const auto intg = [&m](const std::string& key, int ExperimentConfig::* field) {
            m[key] = {[field](ExperimentConfig& c, std::string_view v, const std::string& w) {
                c.*field = parse_int(v, w);
            }};
        };
        dbl("params.e_c", &ExperimentConfig::e_c);
        dbl("params.e_l", &ExperimentConfig::e_l);
        dbl("params.e_0", &ExperimentConfig::e_0);
        dbl("grid.x_max", &ExperimentConfig::x_max);
        intg("grid.n_points", &ExperimentConfig::n_points);
        dbl("grid.d_tau", &ExperimentConfig::d_tau);
        dbl("pulse.amplitude", &ExperimentConfig::amplitude);
        dbl("pulse.duration", &ExperimentConfig::duration);
        dbl("pulse.center", &ExperimentConfig::center);
        dbl("sweep.a_min", &ExperimentConfig::a_min);
        dbl("sweep.a_max", &ExperimentConfig::a_max);
        intg("sweep.a_steps", &ExperimentConfig::a_steps);
        dbl("sweep.tau0_min", &ExperimentConfig::tau0_min);
        dbl("sweep.tau0_max", &ExperimentConfig::tau0_max);
        intg("sweep.tau0_steps", &ExperimentConfig::tau0_steps);
        dbl("twopulse.delta_min", &ExperimentConfig::delta_min);
        dbl("twopulse.delta_max", &ExperimentConfig::delta_max);
        intg("twopulse.delta_steps", &ExperimentConfig::delta_steps);
        m["output.directory"] = {
            [](ExperimentConfig& c, std::string_view v, const std::string&) {
                c.directory = std::string(v);
            }};
        intg("output.sample_every", &ExperimentConfig::sample_every);
        return m;
    }();
    return table;
}

const std::set<std::string>& known_sections() {
    static const std::set<std::string> s = {"params", "grid",     "pulse",
                                            "sweep",  "twopulse", "output"};
    return s;
}

void validate_config(const ExperimentConfig& c, const std::string& origin) {
    const auto fail = [&origin](const std::string& key, const std::string& why) {
        throw ConfigError(origin + ": " + key + " " + why);
    };
    if (!(c.e_c > 0.0)) fail("e_c", "must be > 0");
    if (c.e_l < 0.0) fail("e_l", "must be >= 0");
    if (c.e_0 < 0.0) fail("e_0", "must be >= 0");
    if (!(c.x_max > 0.5)) fail("x_max", "must be > 0.5");
    if (c.n_points < 64) fail("n_points", "must be >= 64");
    if (c.n_points % 2 == 0) fail("n_points", "must be odd so x = 0 is a node");
    if (!(c.d_tau > 0.0)) fail("d_tau", "must be > 0");
    if (c.amplitude < 0.0 || c.amplitude > 1.0) fail("amplitude", "must be in [0, 1]");
    if (!(c.duration > 0.0)) fail("duration", "must be > 0");
    if (c.center < 3.5 * c.duration) fail("center", "must be >= 3.5 * duration");
    if (c.a_steps < 1) fail("a_steps", "must be >= 1");
    if (c.tau0_steps < 1) fail("tau0_steps", "must be >= 1");
    if (c.delta_steps < 1) fail("delta_steps", "must be >= 1");
    if (!(c.a_max >= c.a_min)) fail("a_max", "must be >= a_min");
    if (!(c.tau0_max >= c.tau0_min)) fail("tau0_max", "must be >= tau0_min");
    if (!(c.delta_max >= c.delta_min)) fail("delta_max", "must be >= delta_min");
    if (!(c.delta_min > 0.0)) fail("delta_min", "must be > 0");
    if (c.sample_every < 1) fail("sample_every", "must be >= 1");
    if (c.directory.empty()) fail("directory", "must not be empty");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    bool center_set = false, delta_min_set = false, delta_max_set = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';')
            continue;
        const std::string where = origin + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_sections().count(section))
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(where + ": key '" + key + "' outside any section");
        const std::string qualified = section + "." + key;
        const auto it = bindings().find(qualified);
        if (it == bindings().end())
            throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
        it->second.set(cfg, value, where);
        if (qualified == "pulse.center") center_set = true;
        if (qualified == "twopulse.delta_min") delta_min_set = true;
        if (qualified == "twopulse.delta_max") delta_max_set = true;
    }

    if (!center_set)
        cfg.center = 4.0 * cfg.duration;
    if (!delta_min_set)
        cfg.delta_min = 4.0 * cfg.duration;
    if (!delta_max_set)
        cfg.delta_max = cfg.delta_min + 30.0;

    validate_config(cfg, origin);
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string render_config(const ExperimentConfig& c) {
    std::ostringstream out;
    const auto d = [](double v) { return format_double(v); };
    out << "[params]\n"
        << "e_c = " << d(c.e_c) << "\n"
        << "e_l = " << d(c.e_l) << "\n"
        << "e_0 = " << d(c.e_0) << "\n\n"
        << "[grid]\n"
        << "x_max = " << d(c.x_max) << "\n"
        << "n_points = " << c.n_points << "\n"
        << "d_tau = " << d(c.d_tau) << "\n\n"
        << "[pulse]\n"
        << "amplitude = " << d(c.amplitude) << "\n"
        << "duration = " << d(c.duration) << "\n"
        << "center = " << d(c.center) << "\n\n"
        << "[sweep]\n"
        << "a_min = " << d(c.a_min) << "\n"
        << "a_max = " << d(c.a_max) << "\n"
        << "a_steps = " << c.a_steps << "\n"
        << "tau0_min = " << d(c.tau0_min) << "\n"
        << "tau0_max = " << d(c.tau0_max) << "\n"
        << "tau0_steps = " << c.tau0_steps << "\n\n"
        << "[twopulse]\n"
        << "delta_min = " << d(c.delta_min) << "\n"
        << "delta_max = " << d(c.delta_max) << "\n"
        << "delta_steps = " << c.delta_steps << "\n\n"
        << "[output]\n"
        << "directory = " << c.directory << "\n"
        << "sample_every = " << c.sample_every << "\n";
    return out.str();
}

} // namespace fluxpulse
