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

#include "onebit/commands.hpp"

#include "onebit/moment_cache.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace onebit
{
    void RunConfig::validate() const
    {
        if (sensor_min == 0 || sensor_max < sensor_min)
            throw std::invalid_argument("sensor range must satisfy 1 <= min <= max");
        if (onebit_sensors == 0 || ideal_sensors == 0)
            throw std::invalid_argument("simulated array sizes must be at least 1");
        if (snr1_db < snr0_db)
            throw std::invalid_argument("snr1 must not be below snr0");
        if (runs == 0)
            throw std::invalid_argument("at least one run is required");
        if (!(horizon_ms > 0.0))
            throw std::invalid_argument("horizon must be positive");
        scenario(sensor_min, table_alpha).validate();
    }

    ScenarioConfig RunConfig::scenario(std::size_t sensors, double default_alpha) const
    {
        ScenarioConfig s;
        s.sensors = sensors;
        s.zeta = degrees_to_radians(zeta_deg);
        s.gamma0 = amplitude_from_db(snr0_db);
        s.gamma1 = amplitude_from_db(snr1_db);
        s.alpha1 = alpha1.value_or(default_alpha);
        s.alpha2 = alpha2.value_or(default_alpha);
        s.bandwidth_hz = bandwidth_hz;
        s.seed = seed;
        s.max_steps = max_steps;
        return s;
    }

    std::size_t RunConfig::horizon_steps() const
    {
        return static_cast<std::size_t>(std::ceil(horizon_ms * 1e-3 * bandwidth_hz));
    }

    namespace
    {
        std::unique_ptr<MomentCache> open_cache(const RunConfig &config)
        {
            if (!config.moment_cache)
                return nullptr;
            return std::make_unique<MomentCache>(*config.moment_cache);
        }

        constexpr double ms = 1e3;
    }

    std::vector<SensorAnalysis> analyze_sensor_range(const RunConfig &config)
    {
        config.validate();
        const auto cache = open_cache(config);
        std::vector<SensorAnalysis> out;
        for (std::size_t s = config.sensor_min; s <= config.sensor_max; ++s)
        {
            const auto scenario = config.scenario(s, RunConfig::table_alpha);
            const auto onebit = Detector::one_bit(scenario, cache.get());
            const auto ideal = Detector::ideal(scenario);
            out.push_back({s, onebit.expected_increment(Hypothesis::H0), onebit.expected_increment(Hypothesis::H1),
                           ideal.expected_increment(Hypothesis::H0), ideal.expected_increment(Hypothesis::H1)});
        }
        return out;
    }

    std::vector<AsnTableRow> asn_table(const RunConfig &config, const std::vector<SensorAnalysis> &analysis)
    {
        std::vector<AsnTableRow> rows;
        for (const auto &a : analysis)
        {
            const auto sc = config.scenario(a.sensors, RunConfig::table_alpha);
            const auto onebit = asn(a.onebit_h0, a.onebit_h1, sc.alpha1, sc.alpha2);
            const auto ideal = asn(a.ideal_h0, a.ideal_h1, sc.alpha1, sc.alpha2);
            rows.push_back({a.sensors, ms * latency(onebit.asn0, sc.bandwidth_hz),
                            ms * latency(onebit.asn1, sc.bandwidth_hz), ms * latency(ideal.asn0, sc.bandwidth_hz),
                            ms * latency(ideal.asn1, sc.bandwidth_hz)});
        }
        return rows;
    }

    std::vector<EfficiencyRow> efficiency_table(const RunConfig &config, const std::vector<SensorAnalysis> &analysis)
    {
        std::vector<EfficiencyRow> rows;
        for (const auto &a : analysis)
        {
            const auto sc = config.scenario(a.sensors, RunConfig::table_alpha);
            const auto onebit = asn(a.onebit_h0, a.onebit_h1, sc.alpha1, sc.alpha2);
            const auto ideal = asn(a.ideal_h0, a.ideal_h1, sc.alpha1, sc.alpha2);
            rows.push_back({a.sensors, efficiency(ideal.asn0, onebit.asn0), efficiency(ideal.asn1, onebit.asn1)});
        }
        return rows;
    }

    CsvTable asn_table_csv(const std::vector<AsnTableRow> &rows)
    {
        CsvTable t;
        t.header = {"S", "latency_1bit_g0_ms", "latency_1bit_g1_ms", "latency_ideal_g0_ms", "latency_ideal_g1_ms"};
        for (const auto &r : rows)
            t.rows.push_back({static_cast<std::int64_t>(r.sensors), r.onebit_g0_ms, r.onebit_g1_ms, r.ideal_g0_ms,
                              r.ideal_g1_ms});
        return t;
    }

    CsvTable efficiency_csv(const std::vector<EfficiencyRow> &rows)
    {
        CsvTable t;
        t.header = {"S", "chi_g0", "chi_g1"};
        for (const auto &r : rows)
            t.rows.push_back({static_cast<std::int64_t>(r.sensors), r.chi0, r.chi1});
        return t;
    }

    CsvTable cmd_asn_table(const RunConfig &config)
    {
        return asn_table_csv(asn_table(config, analyze_sensor_range(config)));
    }

    CsvTable cmd_efficiency(const RunConfig &config)
    {
        return efficiency_csv(efficiency_table(config, analyze_sensor_range(config)));
    }

    CsvTable trajectory_csv(const SimulationSeries &series)
    {
        CsvTable t;
        t.header = {"step", "time_ms", "mean_llr", "analytic_llr", "lower_threshold", "upper_threshold"};
        const auto &r = series.report;
        for (std::size_t n = 0; n < r.trajectory.size(); ++n)
        {
            const auto step = static_cast<double>(n + 1);
            t.rows.push_back({static_cast<std::int64_t>(n + 1), step * series.sample_period * ms, r.trajectory[n],
                              step * r.analytic_increment, r.thresholds.lower, r.thresholds.upper});
        }
        return t;
    }

    CsvTable summary_csv(const std::vector<SimulationSeries> &series)
    {
        CsvTable t;
        t.header = {"S", "receiver", "truth", "empirical_asn", "stderr", "error_rate", "truncation_rate", "analytic_asn"};
        for (const auto &s : series)
            t.rows.push_back({static_cast<std::int64_t>(s.sensors), std::string(to_string(s.receiver)),
                              std::string(to_string(s.truth)), s.report.empirical_asn.mean,
                              s.report.empirical_asn.std_error, s.report.error_rate, s.report.truncation_rate,
                              s.report.analytic_asn});
        return t;
    }

    SimulationResult cmd_simulate(const RunConfig &config)
    {
        config.validate();
        const auto cache = open_cache(config);
        SimulationResult result;

        const std::pair<Receiver, std::size_t> arrays[] = {{Receiver::OneBit, config.onebit_sensors},
                                                           {Receiver::Ideal, config.ideal_sensors}};
        for (const auto &[receiver, sensors] : arrays)
        {
            const auto scenario = config.scenario(sensors, RunConfig::simulation_alpha);
            const auto detector = Detector::make(receiver, scenario, cache.get());
            for (const auto truth : {Hypothesis::H0, Hypothesis::H1})
            {
                ExperimentSpec spec;
                spec.scenario = scenario;
                spec.runs = config.runs;
                spec.truth = truth;
                spec.receiver = receiver;
                spec.horizon = config.horizon_steps();

                SimulationSeries s;
                s.name = "llr_S" + std::to_string(sensors) + "_" + std::string(to_string(receiver)) + "_" +
                         std::string(to_string(truth));
                s.sensors = sensors;
                s.receiver = receiver;
                s.truth = truth;
                s.sample_period = scenario.sample_period();
                s.report = run_experiment(spec, detector);
                result.series.push_back(std::move(s));
            }
        }

        for (const auto &s : result.series)
            result.trajectories.push_back(trajectory_csv(s));
        result.summary = summary_csv(result.series);
        return result;
    }

    std::vector<std::filesystem::path> save_simulation(const SimulationResult &result, const std::filesystem::path &dir)
    {
        std::vector<std::filesystem::path> written;
        for (std::size_t k = 0; k < result.series.size(); ++k)
        {
            auto path = dir / (result.series[k].name + ".csv");
            result.trajectories[k].save(path);
            written.push_back(std::move(path));
        }
        auto summary = dir / "summary.csv";
        result.summary.save(summary);
        written.push_back(std::move(summary));
        return written;
    }
}
