// SPDX-License-Identifier: Apache-2.0
//
// onebit-sprt: sequential detection with sign-quantized sensor arrays
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


#include "cli_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>

namespace onebit::cli
{
    namespace
    {
        std::size_t parse_count(std::string_view text, const char *what)
        {
            std::size_t value = 0;
            const auto *end = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(text.data(), end, value);
            if (ec != std::errc() || ptr != end || text.empty())
                throw std::invalid_argument(std::string("invalid ") + what + ": '" + std::string(text) + "'");
            return value;
        }

        template <typename T>
        T get_as(const nlohmann::json &doc, const std::string &key)
        {
            const auto &v = doc.at(key);
            if constexpr (std::is_floating_point_v<T>)
            {
                if (!v.is_number())
                    throw std::invalid_argument("config: '" + key + "' must be a number");
            }
            else if constexpr (std::is_integral_v<T>)
            {
                if (!v.is_number_unsigned())
                    throw std::invalid_argument("config: '" + key + "' must be a non-negative integer");
            }
            else
            {
                if (!v.is_string())
                    throw std::invalid_argument("config: '" + key + "' must be a string");
            }
            return v.get<T>();
        }
    }

    std::pair<std::size_t, std::size_t> parse_sensor_range(const std::string &text)
    {
        const auto colon = text.find(':');
        if (colon == std::string::npos)
        {
            const auto s = parse_count(text, "sensor range");
            return {s, s};
        }
        const std::string_view view(text);
        const auto lo = parse_count(view.substr(0, colon), "sensor range");
        const auto hi = parse_count(view.substr(colon + 1), "sensor range");
        if (lo == 0 || hi < lo)
            throw std::invalid_argument("sensor range must satisfy 1 <= A <= B, got '" + text + "'");
        return {lo, hi};
    }

    void apply_config(RunConfig &config, const nlohmann::json &doc)
    {
        if (!doc.is_object())
            throw std::invalid_argument("config: top level must be a JSON object");

        static const std::set<std::string> known = {
            "sensor_range", "sensors", "ideal_sensors", "zeta_deg", "snr0_db", "snr1_db", "bandwidth_hz",
            "horizon_ms",   "alpha",   "alpha1",        "alpha2",   "runs",    "seed",    "max_steps",
            "moment_cache"};
        for (const auto &[key, value] : doc.items())
            if (!known.contains(key))
                throw std::invalid_argument("config: unknown key '" + key + "'");

        if (doc.contains("sensor_range"))
        {
            const auto &r = doc["sensor_range"];
            if (r.is_string())
                std::tie(config.sensor_min, config.sensor_max) = parse_sensor_range(r.get<std::string>());
            else if (r.is_array() && r.size() == 2 && r[0].is_number_unsigned() && r[1].is_number_unsigned())
            {
                config.sensor_min = r[0].get<std::size_t>();
                config.sensor_max = r[1].get<std::size_t>();
            }
            else
                throw std::invalid_argument("config: 'sensor_range' must be [min, max] or \"min:max\"");
        }
        if (doc.contains("sensors"))
            config.onebit_sensors = get_as<std::size_t>(doc, "sensors");
        if (doc.contains("ideal_sensors"))
            config.ideal_sensors = get_as<std::size_t>(doc, "ideal_sensors");
        if (doc.contains("zeta_deg"))
            config.zeta_deg = get_as<double>(doc, "zeta_deg");
        if (doc.contains("snr0_db"))
            config.snr0_db = get_as<double>(doc, "snr0_db");
        if (doc.contains("snr1_db"))
            config.snr1_db = get_as<double>(doc, "snr1_db");
        if (doc.contains("bandwidth_hz"))
            config.bandwidth_hz = get_as<double>(doc, "bandwidth_hz");
        if (doc.contains("horizon_ms"))
            config.horizon_ms = get_as<double>(doc, "horizon_ms");
        if (doc.contains("alpha"))
            config.alpha1 = config.alpha2 = get_as<double>(doc, "alpha");
        if (doc.contains("alpha1"))
            config.alpha1 = get_as<double>(doc, "alpha1");
        if (doc.contains("alpha2"))
            config.alpha2 = get_as<double>(doc, "alpha2");
        if (doc.contains("runs"))
            config.runs = get_as<std::size_t>(doc, "runs");
        if (doc.contains("seed"))
            config.seed = get_as<std::uint64_t>(doc, "seed");
        if (doc.contains("max_steps"))
            config.max_steps = get_as<std::size_t>(doc, "max_steps");
        if (doc.contains("moment_cache"))
            config.moment_cache = get_as<std::string>(doc, "moment_cache");
    }

    RunConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file " + path.string());
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw std::invalid_argument("config file " + path.string() + ": " + e.what());
        }
        RunConfig config;
        apply_config(config, doc);
        return config;
    }

    void apply_overrides(RunConfig &config, const Overrides &flags, Command command)
    {
        if (flags.sensor_range)
            std::tie(config.sensor_min, config.sensor_max) = parse_sensor_range(*flags.sensor_range);
        if (flags.sensors)
        {
            if (command == Command::Simulate)
                config.onebit_sensors = *flags.sensors;
            else
                config.sensor_min = config.sensor_max = *flags.sensors;
        }
        if (flags.ideal_sensors)
            config.ideal_sensors = *flags.ideal_sensors;
        if (flags.zeta_deg)
            config.zeta_deg = *flags.zeta_deg;
        if (flags.snr0_db)
            config.snr0_db = *flags.snr0_db;
        if (flags.snr1_db)
            config.snr1_db = *flags.snr1_db;
        if (flags.alpha)
            config.alpha1 = config.alpha2 = *flags.alpha;
        if (flags.alpha1)
            config.alpha1 = *flags.alpha1;
        if (flags.alpha2)
            config.alpha2 = *flags.alpha2;
        if (flags.bandwidth_hz)
            config.bandwidth_hz = *flags.bandwidth_hz;
        if (flags.runs)
            config.runs = *flags.runs;
        if (flags.seed)
            config.seed = *flags.seed;
        if (flags.horizon_ms)
            config.horizon_ms = *flags.horizon_ms;
        if (flags.max_steps)
            config.max_steps = *flags.max_steps;
        if (flags.moment_cache)
            config.moment_cache = *flags.moment_cache;
    }
}
