// SPDX-License-Identifier: Apache-2.0
//
// fzbf - Fresnel-zone wideband beamforming for reconfigurable intelligent surfaces
// Copyright (C) 2026 The fzbf Authors
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

#include "fzbf/config.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fzbf/csv.hpp"

#ifndef FZBF_VERSION
#define FZBF_VERSION "0.0.0"
#endif

namespace fzbf
{
    namespace
    {
        struct Value
        {
            bool is_array = false;
            std::vector<std::string> items; // scalars; one item when not an array
        };

        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::string scalar(std::string_view s)
        {
            s = trim(s);
            if (s.empty())
                throw ConfigError("empty value");
            if (s.front() == '"')
            {
                if (s.size() < 2 || s.back() != '"' || s.substr(1, s.size() - 2).find('"') != std::string_view::npos)
                    throw ConfigError("unterminated string");
                return std::string(s.substr(1, s.size() - 2));
            }
            for (char c : s)
                if (c == ' ' || c == '\t' || c == ',' || c == '[' || c == ']' || c == '"')
                    throw ConfigError("malformed value '" + std::string(s) + "'");
            return std::string(s);
        }

        Value parse_value(std::string_view text)
        {
            text = trim(text);
            Value v;
            if (!text.empty() && text.front() == '[')
            {
                if (text.back() != ']')
                    throw ConfigError("array is missing ']'");
                v.is_array = true;
                const std::string_view body = trim(text.substr(1, text.size() - 2));
                if (body.empty())
                    return v;
                std::size_t start = 0;
                bool quoted = false;
                for (std::size_t i = 0; i <= body.size(); ++i)
                {
                    if (i < body.size() && body[i] == '"')
                        quoted = !quoted;
                    if (i == body.size() || (body[i] == ',' && !quoted))
                    {
                        v.items.push_back(scalar(body.substr(start, i - start)));
                        start = i + 1;
                    }
                }
                return v;
            }
            v.items.push_back(scalar(text));
            return v;
        }

        double to_double(const std::string &s)
        {
            double x = 0.0;
            const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
            if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(x))
                throw ConfigError("expected a number, got '" + s + "'");
            return x;
        }

        long long to_integer(const std::string &s)
        {
            long long x = 0;
            const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
            if (r.ec != std::errc() || r.ptr != s.data() + s.size())
                throw ConfigError("expected an integer, got '" + s + "'");
            return x;
        }

        int to_int(const std::string &s)
        {
            const long long x = to_integer(s);
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
                throw ConfigError("integer out of range: " + s);
            return int(x);
        }

        bool to_bool(const std::string &s)
        {
            if (s == "true")
                return true;
            if (s == "false")
                return false;
            throw ConfigError("expected true or false, got '" + s + "'");
        }

        const std::string &single(const Value &v)
        {
            if (v.is_array || v.items.size() != 1)
                throw ConfigError("expected a scalar value");
            return v.items[0];
        }

        std::vector<double> numbers(const Value &v, std::size_t exact = 0)
        {
            if (!v.is_array)
                throw ConfigError("expected an array");
            if (exact != 0 && v.items.size() != exact)
                throw ConfigError("expected an array of " + std::to_string(exact) + " numbers");
            std::vector<double> out;
            for (const auto &s : v.items)
                out.push_back(to_double(s));
            return out;
        }

        std::string array_text(const std::vector<std::string> &items)
        {
            std::string s = "[";
            for (std::size_t i = 0; i < items.size(); ++i)
                s += (i ? ", " : "") + items[i];
            return s + "]";
        }

        std::string numbers_text(const std::vector<double> &xs)
        {
            std::vector<std::string> items;
            for (double x : xs)
                items.push_back(csv::num(x));
            return array_text(items);
        }

        std::string vec_text(const Vec3 &v)
        {
            return numbers_text({v.x(), v.y(), v.z()});
        }

        std::string bool_text(bool b)
        {
            return b ? "true" : "false";
        }

        struct Key
        {
            std::string_view name;
            std::function<void(RunConfig &, const Value &)> set;
            // Empty optional when the key is unset and should not be emitted.
            std::function<std::optional<std::string>(const RunConfig &)> get;
        };

        const std::vector<Key> &keys()
        {
            using S = std::optional<std::string>;
            static const std::vector<Key> table = {
                {"carrier_hz", [](RunConfig &c, const Value &v) { c.system.carrier_hz = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.system.carrier_hz); }},
                {"bandwidth_hz", [](RunConfig &c, const Value &v) { c.system.bandwidth_hz = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.system.bandwidth_hz); }},
                {"subcarriers", [](RunConfig &c, const Value &v) { c.system.subcarriers = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.system.subcarriers); }},
                {"side_m", [](RunConfig &c, const Value &v) { c.system.side_m = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.system.side_m); }},
                {"spacing_m", [](RunConfig &c, const Value &v) { c.system.spacing_m = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.system.spacing_m); }},
                {"n1", [](RunConfig &c, const Value &v) { c.system.n1 = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.system.n1); }},
                {"n2", [](RunConfig &c, const Value &v) { c.system.n2 = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.system.n2); }},
                {"n_bs", [](RunConfig &c, const Value &v) { c.system.n_bs = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.system.n_bs); }},
                {"noise_psd_dbm_hz",
                 [](RunConfig &c, const Value &v) { c.system.noise_psd_dbm_hz = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.system.noise_psd_dbm_hz); }},
                {"tx_power_dbm", [](RunConfig &c, const Value &v) { c.system.tx_power_dbm = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.system.tx_power_dbm); }},
                {"quantize_bits", [](RunConfig &c, const Value &v) { c.system.quantize_bits = to_int(single(v)); },
                 [](const RunConfig &c) -> S {
                     return c.system.quantize_bits ? S(std::to_string(*c.system.quantize_bits)) : std::nullopt;
                 }},
                {"sweep",
                 [](RunConfig &c, const Value &v) { c.experiment.variable = parse_sweep_variable(single(v)); },
                 [](const RunConfig &c) -> S { return std::string(to_string(c.experiment.variable)); }},
                {"values", [](RunConfig &c, const Value &v) { c.experiment.values = numbers(v); },
                 [](const RunConfig &c) -> S { return numbers_text(c.experiment.values); }},
                {"methods",
                 [](RunConfig &c, const Value &v) {
                     if (!v.is_array)
                         throw ConfigError("expected an array of method names");
                     c.experiment.methods.clear();
                     for (const auto &s : v.items)
                         c.experiment.methods.push_back(parse_method(s));
                 },
                 [](const RunConfig &c) -> S {
                     std::vector<std::string> items;
                     for (Method m : c.experiment.methods)
                         items.emplace_back(to_string(m));
                     return array_text(items);
                 }},
                {"trials", [](RunConfig &c, const Value &v) { c.experiment.trials = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.experiment.trials); }},
                {"seed",
                 [](RunConfig &c, const Value &v) {
                     const std::string &s = single(v);
                     std::uint64_t x = 0;
                     const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
                     if (r.ec != std::errc() || r.ptr != s.data() + s.size())
                         throw ConfigError("expected an unsigned integer seed, got '" + s + "'");
                     c.experiment.seed = x;
                 },
                 [](const RunConfig &c) -> S { return std::to_string(c.experiment.seed); }},
                {"bs_distance",
                 [](RunConfig &c, const Value &v) {
                     const auto x = numbers(v, 2);
                     c.experiment.bs_range = {x[0], x[1]};
                 },
                 [](const RunConfig &c) -> S {
                     return numbers_text({c.experiment.bs_range.min, c.experiment.bs_range.max});
                 }},
                {"ue_distance",
                 [](RunConfig &c, const Value &v) {
                     const auto x = numbers(v, 2);
                     c.experiment.ue_range = {x[0], x[1]};
                 },
                 [](const RunConfig &c) -> S {
                     return numbers_text({c.experiment.ue_range.min, c.experiment.ue_range.max});
                 }},
                {"bs_position",
                 [](RunConfig &c, const Value &v) {
                     const auto x = numbers(v, 3);
                     c.bs_position = Vec3(x[0], x[1], x[2]);
                 },
                 [](const RunConfig &c) -> S { return c.bs_position ? S(vec_text(*c.bs_position)) : std::nullopt; }},
                {"ue_position",
                 [](RunConfig &c, const Value &v) {
                     const auto x = numbers(v, 3);
                     c.ue_position = Vec3(x[0], x[1], x[2]);
                 },
                 [](const RunConfig &c) -> S { return c.ue_position ? S(vec_text(*c.ue_position)) : std::nullopt; }},
                {"vsa_subarrays",
                 [](RunConfig &c, const Value &v) { c.experiment.design.vsa_subarrays = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.experiment.design.vsa_subarrays); }},
                {"gsa_samples", [](RunConfig &c, const Value &v) { c.experiment.design.gsa.samples = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.experiment.design.gsa.samples); }},
                {"gsa_freq_samples",
                 [](RunConfig &c, const Value &v) { c.experiment.design.gsa.freq_samples = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.experiment.design.gsa.freq_samples); }},
                {"gsa_extended_bandwidth_hz",
                 [](RunConfig &c, const Value &v) {
                     c.experiment.design.gsa.extended_bandwidth_hz = to_double(single(v));
                 },
                 [](const RunConfig &c) -> S { return csv::num(c.experiment.design.gsa.extended_bandwidth_hz); }},
                {"gsa_max_iterations",
                 [](RunConfig &c, const Value &v) { c.experiment.design.gsa.max_iterations = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.experiment.design.gsa.max_iterations); }},
                {"gsa_ridge", [](RunConfig &c, const Value &v) { c.experiment.design.gsa.ridge = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.experiment.design.gsa.ridge); }},
                {"gsa_tolerance",
                 [](RunConfig &c, const Value &v) { c.experiment.design.gsa.tolerance = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.experiment.design.gsa.tolerance); }},
                {"amplitude_model",
                 [](RunConfig &c, const Value &v) {
                     const std::string &s = single(v);
                     if (s == "centered")
                         c.experiment.design.amplitude = AmplitudeModel::centered;
                     else if (s == "exact")
                         c.experiment.design.amplitude = AmplitudeModel::exact;
                     else
                         throw ConfigError("amplitude_model must be centered or exact");
                 },
                 [](const RunConfig &c) -> S {
                     return std::string(c.experiment.design.amplitude == AmplitudeModel::exact ? "exact" : "centered");
                 }},
                {"frequency_scaling",
                 [](RunConfig &c, const Value &v) { c.experiment.design.frequency_scaling = to_bool(single(v)); },
                 [](const RunConfig &c) -> S { return bool_text(c.experiment.design.frequency_scaling); }},
                {"exact_bs", [](RunConfig &c, const Value &v) { c.experiment.exact_bs = to_bool(single(v)); },
                 [](const RunConfig &c) -> S { return bool_text(c.experiment.exact_bs); }},
                {"bs_spacing_m", [](RunConfig &c, const Value &v) { c.experiment.bs_spacing_m = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.experiment.bs_spacing_m); }},
                {"spectrum_points", [](RunConfig &c, const Value &v) { c.spectrum_points = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.spectrum_points); }},
                {"spectrum_span", [](RunConfig &c, const Value &v) { c.spectrum_span = to_double(single(v)); },
                 [](const RunConfig &c) -> S { return csv::num(c.spectrum_span); }},
                {"gamma_placements", [](RunConfig &c, const Value &v) { c.gamma_placements = to_int(single(v)); },
                 [](const RunConfig &c) -> S { return std::to_string(c.gamma_placements); }},
            };
            return table;
        }

        const Key *find_key(std::string_view name)
        {
            for (const Key &k : keys())
                if (k.name == name)
                    return &k;
            return nullptr;
        }
    }

    std::optional<Placement> RunConfig::placement() const
    {
        if (!bs_position || !ue_position)
            return std::nullopt;
        return Placement{*bs_position, *ue_position};
    }

    void RunConfig::validate() const
    {
        try
        {
            system.resolved();
            experiment.validate();
            if (system.quantize_bits && (*system.quantize_bits < 1 || *system.quantize_bits > 30))
                throw std::invalid_argument("quantize_bits must be in [1, 30]");
            if (bs_position.has_value() != ue_position.has_value())
                throw std::invalid_argument("bs_position and ue_position must be given together");
            if (auto p = placement())
                p->validate();
            if (spectrum_points < 2)
                throw std::invalid_argument("spectrum_points must be at least 2");
            if (!(spectrum_span > 0.0))
                throw std::invalid_argument("spectrum_span must be positive");
            if (gamma_placements < 1)
                throw std::invalid_argument("gamma_placements must be at least 1");
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string("invalid configuration: ") + e.what());
        }
    }

    std::vector<std::string_view> config_keys()
    {
        std::vector<std::string_view> out;
        for (const Key &k : keys())
            out.push_back(k.name);
        return out;
    }

    void apply_config_value(RunConfig &config, std::string_view key, std::string_view value, std::string_view context)
    {
        const Key *k = find_key(key);
        if (!k)
            throw ConfigError(std::string(context) + ": unknown key '" + std::string(key) + "'");
        try
        {
            k->set(config, parse_value(value));
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string(context) + ": " + std::string(key) + ": " + e.what());
        }
    }

    RunConfig parse_config_text(std::string_view text, std::string_view source)
    {
        RunConfig config;
        std::set<std::string, std::less<>> seen;
        std::size_t line_no = 0, pos = 0;
        while (pos <= text.size())
        {
            const std::size_t end = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            const std::string context = std::string(source) + ":" + std::to_string(line_no);

            bool quoted = false;
            for (std::size_t i = 0; i < line.size(); ++i)
            {
                if (line[i] == '"')
                    quoted = !quoted;
                else if (line[i] == '#' && !quoted)
                {
                    line = line.substr(0, i);
                    break;
                }
            }
            line = trim(line);
            if (line.empty())
            {
                if (end == text.size())
                    break;
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(context + ": expected 'key = value' in '" + std::string(line) + "'");
            const std::string_view key = trim(line.substr(0, eq));
            if (!seen.insert(std::string(key)).second)
                throw ConfigError(context + ": key '" + std::string(key) + "' repeated");
            apply_config_value(config, key, line.substr(eq + 1), context);
            if (end == text.size())
                break;
        }
        try
        {
            config.validate();
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(std::string(source) + ": " + e.what());
        }
        return config;
    }

    RunConfig parse_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot open config file " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str(), path.string());
    }

    std::string emit_config(const RunConfig &config)
    {
        std::string out;
        for (const Key &k : keys())
            if (auto v = k.get(config))
                out += std::string(k.name) + " = " + *v + "\n";
        return out;
    }

    std::vector<std::string> default_decisions(const RunConfig &config)
    {
        const DesignOptions &d = config.experiment.design;
        std::vector<std::string> out = {
            "speed of light 299792458 m/s",
            "random placements: direction uniform on the upper hemisphere, radius uniform in the range",
            "route-length sweep: BS distance uniform in [0.35 L, 0.65 L], UE gets the remainder",
            "element counts floor(D / d) when not given; spacing half a carrier wavelength when not given",
            "continuous aperture N1 d by N2 d for zone intensities and delay extents",
            "transmit power default 10 dBm",
            "rate upper bound B log2(1 + S_x E_g / (B S_sigma)) with S_x = P_t / B",
            "optimal method: rate of the flat spectrum sqrt(E_g / B) at the subcarriers",
            "3 dB width constant of the sinc main lobe 0.886",
            "rates evaluated with the discrete element model at " + std::to_string(config.system.subcarriers) +
                " subcarrier centers",
            "trials per sweep cell " + std::to_string(config.experiment.trials),
            "VSA: " + std::to_string(d.vsa_subarrays) + " contiguous row bands, ascending frequencies",
            "GSA defaults: B' = 2 B, K' = 4 N_S, 100 iterations, ridge |A|_F^2 / N_S, tolerance 1e-6",
            "GSA output: offsets from the SPM phase, linear interpolation between zone samples",
            std::string("zone intensity amplitude model: ") +
                (d.amplitude == AmplitudeModel::exact ? "exact distances" : "RIS-center distances"),
            std::string("fast path frequency scaling (fc / f)^2: ") + (d.frequency_scaling ? "on" : "off"),
            "phase quantization: round to the nearest multiple of 2 pi / 2^bits",
        };
        return out;
    }

    std::string RunManifest::to_json() const
    {
        nlohmann::ordered_json j;
        j["tool"] = tool;
        j["version"] = version;
        j["subcommand"] = subcommand;
        j["arguments"] = arguments;
        j["seed"] = seed;
        j["config"] = config_text;
        j["decisions"] = decisions;
        j["summary"] = summary;
        j["started_utc"] = started_utc;
        j["finished_utc"] = finished_utc;
        return j.dump(2) + "\n";
    }

    std::string utc_timestamp()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    std::string tool_version()
    {
        return FZBF_VERSION;
    }
}
