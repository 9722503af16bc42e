// SPDX-License-Identifier: Apache-2.0
//
// leoris - active-RIS assisted LEO satellite downlink simulator and optimizer
// Copyright (C) 2026 The leoris authors
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

#include "leoris/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace leoris
{

ConfigError::ConfigError(Kind kind, const std::string &key, const std::string &what)
    : std::runtime_error(to_string(kind) + (key.empty() ? "" : " '" + key + "'") + ": " + what), kind_(kind), key_(key)
{
}

std::string to_string(ConfigError::Kind kind)
{
    switch (kind)
    {
    case ConfigError::Kind::UnknownKey:
        return "unknown key";
    case ConfigError::Kind::BadUnit:
        return "bad unit";
    case ConfigError::Kind::BadValue:
        return "bad value";
    case ConfigError::Kind::Divisibility:
        return "divisibility";
    case ConfigError::Kind::Invalid:
        return "invalid configuration";
    case ConfigError::Kind::Io:
        return "io";
    }
    return "config error";
}

namespace
{

using Kind = ConfigError::Kind;

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    return out;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Physical dimension of a key; decides which unit suffixes are accepted.
enum class Dim
{
    None,
    Db,
    PowerDbw, // canonical dBW
    PowerDbm, // canonical dBm
    Freq,     // Hz
    Length,   // m
    Time,     // s
    Angle,    // rad
    Energy,   // J
    Mu,       // m^3/s^2
};

struct Quantity
{
    double value = 0.0;
    std::string unit;
};

Quantity split_number(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    const std::string lt = lower(t);
    if (lt == "inf" || lt == "infinity")
        return {std::numeric_limits<double>::infinity(), {}};
    const char *begin = t.c_str();
    char *end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin)
        throw ConfigError(Kind::BadValue, key, "expected a number, got '" + t + "'");
    return {v, trim(std::string(end))};
}

double convert(const std::string &key, Dim dim, const Quantity &q)
{
    const std::string &u = q.unit;
    const double v = q.value;
    if (u.empty())
        return v;
    auto bad = [&]() -> double { throw ConfigError(Kind::BadUnit, key, "unit '" + u + "' not accepted here"); };
    switch (dim)
    {
    case Dim::None:
        return bad();
    case Dim::Db:
        return u == "dB" ? v : bad();
    case Dim::PowerDbw:
    case Dim::PowerDbm:
    {
        double dbw;
        if (u == "dBW")
            dbw = v;
        else if (u == "dBm")
            dbw = v - 30.0;
        else if (u == "W")
        {
            if (!(v > 0.0))
                throw ConfigError(Kind::BadValue, key, "power in W must be positive");
            dbw = 10.0 * std::log10(v);
        }
        else
            return bad();
        return dim == Dim::PowerDbw ? dbw : dbw + 30.0;
    }
    case Dim::Freq:
        if (u == "Hz")
            return v;
        if (u == "kHz")
            return v * 1e3;
        if (u == "MHz")
            return v * 1e6;
        if (u == "GHz")
            return v * 1e9;
        return bad();
    case Dim::Length:
        if (u == "m")
            return v;
        if (u == "km")
            return v * 1e3;
        return bad();
    case Dim::Time:
        if (u == "s")
            return v;
        if (u == "ms")
            return v * 1e-3;
        return bad();
    case Dim::Angle:
        if (u == "rad")
            return v;
        if (u == "deg")
            return v * kPi / 180.0;
        return bad();
    case Dim::Energy:
        if (u == "J")
            return v;
        if (u == "mJ")
            return v * 1e-3;
        return bad();
    case Dim::Mu:
        if (u == "m3/s2")
            return v;
        if (u == "km3/s2")
            return v * 1e9;
        return bad();
    }
    return bad();
}

double scalar(const std::string &key, const std::string &text, Dim dim)
{
    return convert(key, dim, split_number(key, text));
}

// "a, b, c unit": the trailing unit applies to every entry.
std::vector<double> list(const std::string &key, const std::string &text, Dim dim)
{
    std::vector<double> out;
    const auto parts = split(text, ',');
    std::string unit;
    if (!parts.empty())
        unit = split_number(key, parts.back()).unit;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        Quantity q = split_number(key, parts[i]);
        if (q.unit.empty())
            q.unit = unit;
        out.push_back(convert(key, dim, q));
    }
    return out;
}

int integer(const std::string &key, const std::string &text)
{
    const Quantity q = split_number(key, text);
    if (!q.unit.empty())
        throw ConfigError(Kind::BadUnit, key, "integer keys take no unit");
    if (!std::isfinite(q.value) || q.value != std::floor(q.value))
        throw ConfigError(Kind::BadValue, key, "expected an integer, got '" + trim(text) + "'");
    return static_cast<int>(q.value);
}

std::vector<int> int_list(const std::string &key, const std::string &text)
{
    std::vector<int> out;
    for (const auto &p : split(text, ','))
        out.push_back(integer(key, p));
    return out;
}

bool boolean(const std::string &key, const std::string &text)
{
    const std::string t = lower(trim(text));
    if (t == "true" || t == "yes" || t == "on" || t == "1")
        return true;
    if (t == "false" || t == "no" || t == "off" || t == "0")
        return false;
    throw ConfigError(Kind::BadValue, key, "expected true or false, got '" + trim(text) + "'");
}

Vec3 vec3(const std::string &key, const std::string &text)
{
    const auto v = list(key, text, Dim::Length);
    if (v.size() != 3)
        throw ConfigError(Kind::BadValue, key, "expected three comma-separated coordinates");
    return {v[0], v[1], v[2]};
}

using Setter = std::function<void(ExperimentSpec &, const std::string &key, const std::string &value)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> m;
        auto real = [&m](const char *name, Dim dim, auto field) {
            m[name] = [dim, field](ExperimentSpec &s, const std::string &k, const std::string &v) {
                field(s) = scalar(k, v, dim);
            };
        };
        // scene
        m["user_pos"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) { s.scene.user_pos = vec3(k, v); };
        m["ris_pos"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) { s.scene.ris_pos = vec3(k, v); };
        m["obstacle_pos"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.scene.obstacle_pos = vec3(k, v);
        };
        real("obstacle_height", Dim::Length, [](ExperimentSpec &s) -> double & { return s.scene.obstacle_height; });
        real("carrier_freq", Dim::Freq, [](ExperimentSpec &s) -> double & { return s.scene.carrier_freq; });
        real("orbit_radius", Dim::Length, [](ExperimentSpec &s) -> double & { return s.scene.orbit_radius; });
        real("kepler_mu", Dim::Mu, [](ExperimentSpec &s) -> double & { return s.scene.kepler_mu; });
        real("altitude", Dim::Length, [](ExperimentSpec &s) -> double & { return s.scene.altitude; });
        real("T", Dim::Time, [](ExperimentSpec &s) -> double & { return s.scene.period; });
        real("delta", Dim::Time, [](ExperimentSpec &s) -> double & { return s.scene.slot_len; });
        real("beta", Dim::None, [](ExperimentSpec &s) -> double & { return s.scene.radiation_exponent; });
        m["initial_anomaly"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            if (lower(trim(v)) == "auto")
                s.scene.initial_anomaly.reset();
            else
                s.scene.initial_anomaly = scalar(k, v, Dim::Angle);
        };
        // fading
        real("kappa", Dim::None, [](ExperimentSpec &s) -> double & { return s.fading.rician_kappa; });
        real("rain_mu", Dim::None, [](ExperimentSpec &s) -> double & { return s.fading.rain_mu; });
        real("rain_sigma2", Dim::None, [](ExperimentSpec &s) -> double & { return s.fading.rain_sigma2; });
        m["L"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) { s.fading.sat_antennas = integer(k, v); };
        m["M"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) { s.fading.ris_rows = integer(k, v); };
        m["N"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) { s.fading.ris_cols = integer(k, v); };
        m["beam_gain"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.fading.beam_gain = list(k, v, Dim::None);
        };
        m["literal_ru_amplitude"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.fading.literal_ru_amplitude = boolean(k, v);
        };
        // link
        real("P_S", Dim::PowerDbw, [](ExperimentSpec &s) -> double & { return s.link.p_s_dbw; });
        real("G_S", Dim::Db, [](ExperimentSpec &s) -> double & { return s.link.g_s_db; });
        real("G_U", Dim::Db, [](ExperimentSpec &s) -> double & { return s.link.g_u_db; });
        real("G_R", Dim::Db, [](ExperimentSpec &s) -> double & { return s.link.g_r_db; });
        real("sigma1", Dim::PowerDbw, [](ExperimentSpec &s) -> double & { return s.link.sigma1_dbw; });
        real("sigma2", Dim::PowerDbw, [](ExperimentSpec &s) -> double & { return s.link.sigma2_dbw; });
        real("P_C", Dim::PowerDbm, [](ExperimentSpec &s) -> double & { return s.link.p_c_dbm; });
        real("eta", Dim::None, [](ExperimentSpec &s) -> double & { return s.link.eta; });
        real("a_max", Dim::Db, [](ExperimentSpec &s) -> double & { return s.link.a_max_db; });
        m["a_max_mode"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            const std::string t = lower(trim(v));
            if (t == "power")
                s.link.a_max_mode = AmplitudeDb::Power;
            else if (t == "amplitude")
                s.link.a_max_mode = AmplitudeDb::Amplitude;
            else
                throw ConfigError(Kind::BadValue, k, "expected power or amplitude");
        };
        m["E_max"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            if (lower(trim(v)) == "calibrate")
            {
                s.calibrate_e_max = true;
                return;
            }
            s.calibrate_e_max = false;
            s.link.e_max = scalar(k, v, Dim::Energy);
        };
        // optimizer
        real("rho0", Dim::None, [](ExperimentSpec &s) -> double & { return s.ao.rho0; });
        real("rho_step", Dim::None, [](ExperimentSpec &s) -> double & { return s.ao.rho_step; });
        real("rho_max", Dim::None, [](ExperimentSpec &s) -> double & { return s.ao.rho_max; });
        real("rank_tol", Dim::None, [](ExperimentSpec &s) -> double & { return s.ao.rank_tol; });
        real("ao_tol", Dim::None, [](ExperimentSpec &s) -> double & { return s.ao.ao_tol; });
        real("sdp_tol", Dim::None, [](ExperimentSpec &s) -> double & { return s.ao.sdp_tol; });
        m["ao_relative_tol"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.ao.relative_tol = boolean(k, v);
        };
        m["max_penalty_rounds"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.ao.max_penalty_rounds = integer(k, v);
        };
        m["ao_max_iter"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.ao.ao_max_iter = integer(k, v);
        };
        m["sdp_max_iter"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.ao.sdp_max_iter = integer(k, v);
        };
        m["gr_samples"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.ao.gr_samples = integer(k, v);
        };
        m["optimize_orientation"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.ao.optimize_orientation = boolean(k, v);
        };
        // experiment
        m["series"] = [](ExperimentSpec &s, const std::string &, const std::string &v) { s.series = trim(v); };
        m["seeds"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.seeds.clear();
            for (int x : int_list(k, v))
            {
                if (x < 0)
                    throw ConfigError(Kind::BadValue, k, "seeds must be non-negative");
                s.seeds.push_back(static_cast<std::uint64_t>(x));
            }
        };
        m["K_candidates"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.k_candidates = int_list(k, v);
        };
        m["sweep"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            try
            {
                s.sweep = sweep_from_string(trim(v));
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(Kind::BadValue, k, e.what());
            }
        };
        m["sweep_values"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            // Lengths and energies share this key; units are checked per entry.
            s.sweep_values.clear();
            const auto parts = split(v, ',');
            for (const auto &p : parts)
            {
                const Quantity q = split_number(k, p);
                if (q.unit.empty())
                    s.sweep_values.push_back(q.value);
                else if (q.unit == "m" || q.unit == "km")
                    s.sweep_values.push_back(convert(k, Dim::Length, q));
                else
                    s.sweep_values.push_back(convert(k, Dim::Energy, q));
            }
        };
        m["baselines"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.baselines.clear();
            for (const auto &p : split(v, ','))
            {
                if (p.empty())
                    continue;
                try
                {
                    s.baselines.push_back(scheme_from_string(p));
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(Kind::BadValue, k, e.what());
                }
            }
        };
        m["calibration_K"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.calibration_K = integer(k, v);
        };
        real("calibration_factor", Dim::None, [](ExperimentSpec &s) -> double & { return s.calibration_factor; });
        m["per_slot_rows"] = [](ExperimentSpec &s, const std::string &k, const std::string &v) {
            s.per_slot_rows = boolean(k, v);
        };
        m["output"] = [](ExperimentSpec &s, const std::string &, const std::string &v) { s.output = trim(v); };
        return m;
    }();
    return table;
}

} // namespace

ExperimentSpec parse_config(std::istream &is, const ExperimentSpec &base)
{
    ExperimentSpec spec = base;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(Kind::BadValue, "", "line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(Kind::UnknownKey, key, "line " + std::to_string(lineno));
        if (value.empty())
            throw ConfigError(Kind::BadValue, key, "empty value");
        it->second(spec, key, value);
    }
    spec.validate();
    return spec;
}

ExperimentSpec load_config(const std::string &path, const ExperimentSpec &base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(Kind::Io, "", "cannot open '" + path + "'");
    return parse_config(in, base);
}

} // namespace leoris
