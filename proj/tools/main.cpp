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


// onebit-sprt: analytic latency and efficiency tables and Monte-Carlo simulation of the
// sequential test with one-bit and unquantized sensor arrays.
//
//   onebit-sprt efficiency --sensor-range 2:16
//   onebit-sprt asn-table --alpha 1e-9 --out latency.csv
//   onebit-sprt simulate --runs 200 --seed 1 --out sim/

#include "cli_config.hpp"

#include "onebit/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>

namespace
{
    using onebit::cli::Command;

    void add_scenario_options(CLI::App &app, onebit::cli::Overrides &o)
    {
        app.add_option("--zeta-deg", o.zeta_deg, "Arrival angle [deg] (default 15)");
        app.add_option("--snr0-db", o.snr0_db, "SNR under H0, power dB, gamma^2 = 10^(dB/10) (default -24)");
        app.add_option("--snr1-db", o.snr1_db, "SNR under H1, power dB (default -18)");
        auto *alpha = app.add_option("--alpha", o.alpha, "Sets alpha1 = alpha2");
        app.add_option("--alpha1", o.alpha1, "Bound on P(decide H0 | H1)")->excludes(alpha);
        app.add_option("--alpha2", o.alpha2, "Bound on P(decide H1 | H0)")->excludes(alpha);
        app.add_option("--bandwidth-hz", o.bandwidth_hz, "Two-sided bandwidth B = f_s [Hz] (default 2.046e6)");
        app.add_option("--moment-cache", o.moment_cache, "Directory for cached statistics moments");
    }

    void write_table(const onebit::CsvTable &table, const std::string &out)
    {
        if (out.empty() || out == "-")
            table.write(std::cout);
        else
            table.save(out);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Sequential detection with sign-quantized sensor arrays"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "onebit-sprt 0.1.0");

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; command-line flags take precedence")
        ->check(CLI::ExistingFile);

    onebit::cli::Overrides flags;
    std::string table_out, simulation_out = "simulation";

    auto *asn_table = app.add_subcommand("asn-table", "Average detection latency [ms] against the array size");
    auto *efficiency = app.add_subcommand("efficiency", "Efficiency chi = ASN_ideal / ASN_1bit against the array size");
    for (auto *sub : {asn_table, efficiency})
    {
        auto *range = sub->add_option("--sensor-range", flags.sensor_range, "Sweep A:B (default 2:16)");
        sub->add_option("--sensors", flags.sensors, "Single array size")->excludes(range);
        add_scenario_options(*sub, flags);
        sub->add_option("--out", table_out, "Output CSV file (default stdout)");
    }
    asn_table->footer("alpha defaults to 1e-9.");
    efficiency->footer("chi does not depend on alpha; alpha defaults to 1e-9.");

    auto *simulate = app.add_subcommand("simulate", "Monte-Carlo LLR trajectories of the one-bit and ideal arrays");
    simulate->add_option("--sensors", flags.sensors, "One-bit array size (default 16)");
    simulate->add_option("--ideal-sensors", flags.ideal_sensors, "Ideal array size (default 8)");
    add_scenario_options(*simulate, flags);
    simulate->add_option("--runs", flags.runs, "Independent runs per series (default 200)");
    simulate->add_option("--seed", flags.seed, "Master seed, run k uses seed + k (default 1)");
    simulate->add_option("--horizon-ms", flags.horizon_ms, "Trajectory length [ms] (default 1.4)");
    simulate->add_option("--max-steps", flags.max_steps, "Truncation of a single run (default 100 x analytic ASN)");
    simulate->add_option("--out", simulation_out, "Output directory (default ./simulation)");
    simulate->footer("alpha defaults to 1e-3. Writes one trajectory CSV per series and summary.csv.");

    CLI11_PARSE(app, argc, argv);

    try
    {
        const Command command = asn_table->parsed()    ? Command::AsnTable
                                : efficiency->parsed() ? Command::Efficiency
                                                       : Command::Simulate;
        onebit::RunConfig config = config_path.empty() ? onebit::RunConfig{} : onebit::cli::load_config(config_path);
        onebit::cli::apply_overrides(config, flags, command);
        config.validate();

        switch (command)
        {
        case Command::AsnTable:
            write_table(onebit::cmd_asn_table(config), table_out);
            break;
        case Command::Efficiency:
            write_table(onebit::cmd_efficiency(config), table_out);
            break;
        case Command::Simulate:
        {
            const auto result = onebit::cmd_simulate(config);
            for (const auto &path : onebit::save_simulation(result, simulation_out))
                std::cerr << "wrote " << path.string() << '\n';
            result.summary.write(std::cout);
            break;
        }
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "onebit-sprt: error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}
