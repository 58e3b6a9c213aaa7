// SPDX-License-Identifier: Apache-2.0
//
// antijam: sensing-assisted anti-jamming receivers for the MU-MIMO uplink
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "antijam/harness.hpp"

namespace antijam {

namespace {

std::string trim(const std::string &s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string &text, const std::string &key)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
    return value;
}

long long parse_integer(const std::string &text, const std::string &key)
{
    const std::string t = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("'" + key + "': expected an integer, got '" + text + "'");
    return value;
}

int parse_int(const std::string &text, const std::string &key)
{
    const long long v = parse_integer(text, key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError("'" + key + "': value out of range");
    return static_cast<int>(v);
}

std::vector<int> to_int_list(const std::vector<double> &values, const std::string &key)
{
    std::vector<int> out;
    for (double v : values) {
        if (v != std::round(v))
            throw ConfigError("'" + key + "': expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<double> inclusive_range(double start, double stop, double step)
{
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i)
        out.push_back(start + i * step);
    return out;
}

} // namespace

const char *to_string(SweepKind kind)
{
    switch (kind) {
    case SweepKind::antennas:
        return "antennas";
    case SweepKind::power:
        return "power";
    case SweepKind::aoa:
        return "aoa";
    }
    return "?";
}

const char *to_string(Method method)
{
    switch (method) {
    case Method::no_jammer:
        return "no_jammer";
    case Method::no_protection:
        return "no_protection";
    case Method::analytic:
        return "analytic";
    case Method::minsinr:
        return "minsinr";
    case Method::zf:
        return "zf";
    }
    return "?";
}

const char *to_string(Baseline baseline)
{
    return baseline == Baseline::mmse ? "mmse" : "matched";
}

const char *to_string(BeampatternAngles angles)
{
    return angles == BeampatternAngles::resolved ? "resolved" : "padded";
}

SweepKind parse_sweep_kind(const std::string &text)
{
    const std::string t = trim(text);
    for (auto kind : {SweepKind::antennas, SweepKind::power, SweepKind::aoa})
        if (t == to_string(kind))
            return kind;
    throw ConfigError("unknown sweep kind '" + text + "' (expected antennas, power or aoa)");
}

Method parse_method(const std::string &text)
{
    const std::string t = trim(text);
    for (auto m : {Method::no_jammer, Method::no_protection, Method::analytic, Method::minsinr, Method::zf})
        if (t == to_string(m))
            return m;
    throw ConfigError("unknown method '" + text + "'");
}

Baseline parse_baseline(const std::string &text)
{
    const std::string t = trim(text);
    if (t == "mmse")
        return Baseline::mmse;
    if (t == "matched")
        return Baseline::matched;
    throw ConfigError("unknown baseline '" + text + "' (expected mmse or matched)");
}

BeampatternAngles parse_beampattern_angles(const std::string &text)
{
    const std::string t = trim(text);
    if (t == "resolved")
        return BeampatternAngles::resolved;
    if (t == "padded")
        return BeampatternAngles::padded;
    throw ConfigError("unknown beampattern angle set '" + text + "' (expected resolved or padded)");
}

SweepConfig::SweepConfig()
{
    for (int n = 16; n <= 128; n += 8)
        jammer_antenna_grid.push_back(n);
    for (int a = -35; a <= 30; a += 5)
        jammer_aoa_grid_deg.push_back(a);
}

std::vector<double> SweepConfig::sweep_values() const
{
    switch (kind) {
    case SweepKind::antennas:
        return {jammer_antenna_grid.begin(), jammer_antenna_grid.end()};
    case SweepKind::power:
        return jammer_power_grid_db;
    case SweepKind::aoa:
        return jammer_aoa_grid_deg;
    }
    return {};
}

void SweepConfig::validate() const
{
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (jammer_antenna_grid.empty() || jammer_power_grid_db.empty() || jammer_aoa_grid_deg.empty())
        throw ConfigError("sweep grids must be non-empty");
    if (methods.empty())
        throw ConfigError("at least one method is required");
    if (!(eta >= 0.0))
        throw ConfigError("eta must be nonnegative");
    if (!std::isfinite(gamma0_db))
        throw ConfigError("gamma0_db must be finite");
    if (threads < 0)
        throw ConfigError("threads must be >= 0");
    for (int n : jammer_antenna_grid)
        if (n < 1)
            throw ConfigError("jammer antenna counts must be >= 1");
    for (double p : jammer_power_grid_db)
        if (!std::isfinite(p))
            throw ConfigError("jammer powers must be finite");
    // The scenario check covers every AoA on the grid.
    ScenarioConfig probe = scenario;
    for (double a : jammer_aoa_grid_deg) {
        probe.jammer_aoa_deg = a;
        probe.validate();
    }
}

std::vector<double> parse_number_list(const std::string &text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw ConfigError("empty number list");
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, ':'))
            parts.push_back(part);
        if (parts.size() != 3)
            throw ConfigError("range must be start:stop:step, got '" + text + "'");
        const double start = parse_double(parts[0], "range");
        const double stop = parse_double(parts[1], "range");
        const double step = parse_double(parts[2], "range");
        if (!(step > 0.0) || stop < start)
            throw ConfigError("range '" + text + "' is empty or has a non-positive step");
        return inclusive_range(start, stop, step);
    }
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(item, "list"));
    return out;
}

void apply_setting(SweepConfig &cfg, const std::string &raw_key, const std::string &value)
{
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    auto &sc = cfg.scenario;

    if (key == "kind")
        cfg.kind = parse_sweep_kind(value);
    else if (key == "trials")
        cfg.trials = parse_int(value, key);
    else if (key == "seed") {
        const long long s = parse_integer(value, key);
        if (s < 0)
            throw ConfigError("'seed' must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "eta")
        cfg.eta = parse_double(value, key);
    else if (key == "gamma0_db")
        cfg.gamma0_db = parse_double(value, key);
    else if (key == "baseline")
        cfg.baseline = parse_baseline(value);
    else if (key == "angles")
        cfg.angles = parse_beampattern_angles(value);
    else if (key == "threads")
        cfg.threads = parse_int(value, key);
    else if (key == "methods") {
        cfg.methods.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            cfg.methods.push_back(parse_method(item));
    } else if (key == "nj_grid")
        cfg.jammer_antenna_grid = to_int_list(parse_number_list(value), key);
    else if (key == "pj_grid_db")
        cfg.jammer_power_grid_db = parse_number_list(value);
    else if (key == "aoa_grid_deg")
        cfg.jammer_aoa_grid_deg = parse_number_list(value);
    else if (key == "users")
        sc.users = parse_int(value, key);
    else if (key == "user_antennas")
        sc.user_antennas = parse_int(value, key);
    else if (key == "bs_antennas")
        sc.bs_antennas = parse_int(value, key);
    else if (key == "jammer_antennas")
        sc.jammer_antennas = parse_int(value, key);
    else if (key == "user_paths")
        sc.user_paths = parse_int(value, key);
    else if (key == "jammer_paths")
        sc.jammer_paths = parse_int(value, key);
    else if (key == "spacing")
        sc.spacing = parse_double(value, key);
    else if (key == "user_aoa_deg")
        sc.user_aoa_deg = parse_number_list(value);
    else if (key == "jammer_aoa_deg")
        sc.jammer_aoa_deg = parse_double(value, key);
    else if (key == "angle_spread_deg")
        sc.angle_spread_deg = parse_double(value, key);
    else if (key == "user_power_db")
        sc.user_power_db = parse_double(value, key);
    else if (key == "jammer_power_db")
        sc.jammer_power_db = parse_double(value, key);
    else if (key == "noise_db")
        sc.noise_db = parse_double(value, key);
    else
        throw ConfigError("unknown configuration key '" + raw_key + "'");
}

void load_config_file(SweepConfig &cfg, const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
        try {
            apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

} // namespace antijam
