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

#ifndef ONEBIT_COMMANDS_HPP
#define ONEBIT_COMMANDS_HPP

#include "onebit/csv.hpp"
#include "onebit/montecarlo.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace onebit
{
    // Settings shared by the analytic tables and the simulation.
    struct RunConfig
    {
        std::size_t sensor_min = 2;     // sweep of the tables
        std::size_t sensor_max = 16;
        std::size_t onebit_sensors = 16; // simulated one-bit array
        std::size_t ideal_sensors = 8;   // simulated ideal array
        double zeta_deg = 15.0;
        double snr0_db = -24.0;
        double snr1_db = -18.0;
        std::optional<double> alpha1;   // unset: 1e-9 for tables, 1e-3 for simulation
        std::optional<double> alpha2;
        double bandwidth_hz = 2.046e6;
        std::size_t runs = 200;
        std::uint64_t seed = 1;
        double horizon_ms = 1.4;
        std::size_t max_steps = 0;      // 0: 100 x the analytic ASN
        std::optional<std::filesystem::path> moment_cache;

        static constexpr double table_alpha = 1e-9;
        static constexpr double simulation_alpha = 1e-3;

        // Throws std::invalid_argument on an invalid range or value.
        void validate() const;

        ScenarioConfig scenario(std::size_t sensors, double default_alpha) const;
        std::size_t horizon_steps() const;
    };

    // Analytic expected LLR increments for one array size.
    struct SensorAnalysis
    {
        std::size_t sensors = 0;
        double onebit_h0 = 0.0, onebit_h1 = 0.0;
        double ideal_h0 = 0.0, ideal_h1 = 0.0;
    };

    std::vector<SensorAnalysis> analyze_sensor_range(const RunConfig &config);

    struct AsnTableRow
    {
        std::size_t sensors = 0;
        double onebit_g0_ms = 0.0, onebit_g1_ms = 0.0;
        double ideal_g0_ms = 0.0, ideal_g1_ms = 0.0;
    };

    struct EfficiencyRow
    {
        std::size_t sensors = 0;
        double chi0 = 0.0, chi1 = 0.0;
    };

    std::vector<AsnTableRow> asn_table(const RunConfig &config, const std::vector<SensorAnalysis> &analysis);
    std::vector<EfficiencyRow> efficiency_table(const RunConfig &config, const std::vector<SensorAnalysis> &analysis);

    // S, latency_1bit_g0_ms, latency_1bit_g1_ms, latency_ideal_g0_ms, latency_ideal_g1_ms
    CsvTable asn_table_csv(const std::vector<AsnTableRow> &rows);
    // S, chi_g0, chi_g1
    CsvTable efficiency_csv(const std::vector<EfficiencyRow> &rows);

    CsvTable cmd_asn_table(const RunConfig &config);
    CsvTable cmd_efficiency(const RunConfig &config);

    struct SimulationSeries
    {
        std::string name; // e.g. "llr_S16_1bit_H1"
        std::size_t sensors = 0;
        Receiver receiver = Receiver::OneBit;
        Hypothesis truth = Hypothesis::H1;
        double sample_period = 0.0;
        ExperimentReport report;
    };

    struct SimulationResult
    {
        std::vector<SimulationSeries> series;
        CsvTable summary;
        std::vector<CsvTable> trajectories; // parallel to series
    };

    // step, time_ms, mean_llr, analytic_llr, lower_threshold, upper_threshold
    CsvTable trajectory_csv(const SimulationSeries &series);
    // S, receiver, truth, empirical_asn, stderr, error_rate, truncation_rate, analytic_asn
    CsvTable summary_csv(const std::vector<SimulationSeries> &series);

    // One-bit array under H0/H1 and ideal array under H0/H1.
    SimulationResult cmd_simulate(const RunConfig &config);

    // Writes <dir>/<series name>.csv for every series and <dir>/summary.csv.
    std::vector<std::filesystem::path> save_simulation(const SimulationResult &result, const std::filesystem::path &dir);
}

#endif
