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


#ifndef ONEBIT_TOOLS_CLI_CONFIG_HPP
#define ONEBIT_TOOLS_CLI_CONFIG_HPP

#include "onebit/commands.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>

namespace onebit::cli
{
    enum class Command
    {
        AsnTable,
        Efficiency,
        Simulate
    };

    // Values given on the command line; unset fields keep the config-file or default value.
    struct Overrides
    {
        std::optional<std::size_t> sensors;
        std::optional<std::string> sensor_range; // "A:B"
        std::optional<std::size_t> ideal_sensors;
        std::optional<double> zeta_deg;
        std::optional<double> snr0_db;
        std::optional<double> snr1_db;
        std::optional<double> alpha;
        std::optional<double> alpha1;
        std::optional<double> alpha2;
        std::optional<double> bandwidth_hz;
        std::optional<std::size_t> runs;
        std::optional<std::uint64_t> seed;
        std::optional<double> horizon_ms;
        std::optional<std::size_t> max_steps;
        std::optional<std::string> moment_cache;
    };

    // "A:B" or a single "S"; throws std::invalid_argument otherwise.
    std::pair<std::size_t, std::size_t> parse_sensor_range(const std::string &text);

    /*
     * Config file schema (JSON object, every key optional):
     *
     *   sensor_range   [min, max] or "min:max"   table sweep
     *   sensors        integer                   one-bit array of the simulation
     *   ideal_sensors  integer                   ideal array of the simulation
     *   zeta_deg, snr0_db, snr1_db, bandwidth_hz, horizon_ms   numbers
     *   alpha          number, sets alpha1 and alpha2
     *   alpha1, alpha2 numbers
     *   runs, seed, max_steps                    integers
     *   moment_cache   string (directory)
     *
     * Unknown keys and wrongly typed values are rejected with std::invalid_argument.
     */
    void apply_config(RunConfig &config, const nlohmann::json &doc);
    RunConfig load_config(const std::filesystem::path &path);

    // For the table commands --sensors selects a single array size, for simulate it sets
    // the one-bit array.
    void apply_overrides(RunConfig &config, const Overrides &flags, Command command);
}

#endif
