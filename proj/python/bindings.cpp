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


#include "onebit/array_model.hpp"
#include "onebit/binary_model.hpp"
#include "onebit/commands.hpp"
#include "onebit/ideal_receiver.hpp"
#include "onebit/montecarlo.hpp"
#include "onebit/orthant.hpp"
#include "onebit/sprt.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace onebit;

namespace
{
    py::dict report_to_dict(const ExperimentReport &r)
    {
        py::dict d;
        d["runs"] = r.runs;
        d["decided_h0"] = r.decided_h0;
        d["decided_h1"] = r.decided_h1;
        d["truncated"] = r.truncated;
        d["max_steps"] = r.max_steps;
        d["empirical_asn"] = r.empirical_asn.mean;
        d["empirical_asn_stderr"] = r.empirical_asn.std_error;
        d["error_rate"] = r.error_rate;
        d["error_stderr"] = r.error_stderr;
        d["error_ci"] = py::make_tuple(r.error_ci_low, r.error_ci_high);
        d["truncation_rate"] = r.truncation_rate;
        d["trajectory"] = r.trajectory;
        d["trajectory_stderr"] = r.trajectory_stderr;
        d["analytic_increment"] = r.analytic_increment;
        d["analytic_asn"] = r.analytic_asn;
        d["thresholds"] = py::make_tuple(r.thresholds.lower, r.thresholds.upper);
        std::vector<std::size_t> stops;
        std::vector<std::string> decisions;
        for (const auto &o : r.outcomes)
        {
            stops.push_back(o.stop_step);
            decisions.emplace_back(to_string(o.decision));
        }
        d["stop_steps"] = stops;
        d["decisions"] = decisions;
        return d;
    }

    Hypothesis parse_truth(const std::string &s)
    {
        if (s == "H0")
            return Hypothesis::H0;
        if (s == "H1")
            return Hypothesis::H1;
        throw py::value_error("truth must be 'H0' or 'H1'");
    }

    Receiver parse_receiver(const std::string &s)
    {
        if (s == "1bit")
            return Receiver::OneBit;
        if (s == "ideal")
            return Receiver::Ideal;
        throw py::value_error("receiver must be '1bit' or 'ideal'");
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Sequential detection with sign-quantized sensor arrays";

    py::register_exception_translator(
        [](std::exception_ptr p)
        {
            try
            {
                if (p)
                    std::rethrow_exception(p);
            }
            catch (const std::invalid_argument &e)
            {
                PyErr_SetString(PyExc_ValueError, e.what());
            }
        });

    m.def("amplitude_from_db", &amplitude_from_db, py::arg("db"));
    m.def("amplitude_to_db", &amplitude_to_db, py::arg("gamma"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("sensors", &ScenarioConfig::sensors)
        .def_readwrite("zeta", &ScenarioConfig::zeta)
        .def_readwrite("gamma0", &ScenarioConfig::gamma0)
        .def_readwrite("gamma1", &ScenarioConfig::gamma1)
        .def_readwrite("alpha1", &ScenarioConfig::alpha1)
        .def_readwrite("alpha2", &ScenarioConfig::alpha2)
        .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("max_steps", &ScenarioConfig::max_steps)
        .def_property_readonly("dimension", &ScenarioConfig::dimension)
        .def_property_readonly("sample_period", &ScenarioConfig::sample_period)
        .def("validate", &ScenarioConfig::validate)
        .def_static("reference", &ScenarioConfig::reference, py::arg("sensors"), py::arg("alpha") = 1e-3,
                    "zeta = 15 deg, -24 / -18 dB, B = 2.046 MHz")
        .def("__repr__",
             [](const ScenarioConfig &s)
             {
                 return "ScenarioConfig(sensors=" + std::to_string(s.sensors) + ", zeta=" + std::to_string(s.zeta) +
                        ", gamma0=" + std::to_string(s.gamma0) + ", gamma1=" + std::to_string(s.gamma1) + ")";
             });

    // array model
    m.def(
        "build_steering", [](std::size_t sensors, double zeta) { return build_steering(sensors, zeta).matrix(); },
        py::arg("sensors"), py::arg("zeta"));
    m.def(
        "build_covariance",
        [](std::size_t sensors, double zeta, double gamma)
        { return build_covariance(build_steering(sensors, zeta), gamma).matrix(); },
        py::arg("sensors"), py::arg("zeta"), py::arg("gamma"));
    m.def(
        "normalize_correlation",
        [](const Eigen::MatrixXd &r) { return normalize_correlation(CovarianceMatrix(r)).matrix(); }, py::arg("cov"));
    m.def(
        "quantize_sign", [](const Eigen::VectorXd &y) { return quantize_sign(y).signs(); }, py::arg("y"));

    // orthant probabilities
    m.def("orthant2", &orthant2, py::arg("rho"));
    m.def("orthant3", &orthant3, py::arg("sigma"));
    m.def("orthant4", &orthant4, py::arg("sigma"));
    m.def("quad_moment", &quad_moment, py::arg("sigma"));

    // replacement model
    m.def(
        "pair_index_map", [](std::size_t dimension) { return PairIndexMap(dimension).pairs(); },
        py::arg("dimension"));
    m.def(
        "statistics",
        [](const Eigen::VectorXd &z)
        { return statistics(BinarySnapshot::from_signs(z), PairIndexMap(static_cast<std::size_t>(z.size()))); },
        py::arg("z"));
    m.def(
        "arcsine_correlation", [](const Eigen::MatrixXd &sigma) { return arcsine_correlation(sigma); },
        py::arg("sigma"));
    m.def(
        "mu_phi",
        [](std::size_t sensors, double zeta, double gamma) { return mu_phi(build_steering(sensors, zeta), gamma); },
        py::arg("sensors"), py::arg("zeta"), py::arg("gamma"));
    m.def(
        "r_phi",
        [](std::size_t sensors, double zeta, double gamma)
        {
            const auto steering = build_steering(sensors, zeta);
            py::gil_scoped_release release;
            return r_phi(steering, gamma);
        },
        py::arg("sensors"), py::arg("zeta"), py::arg("gamma"));
    m.def("natural_difference", &natural_difference, py::arg("m0"), py::arg("c0"), py::arg("m1"), py::arg("c1"));

    py::class_<TestStatisticWeights>(m, "TestStatisticWeights")
        .def_property_readonly("b", &TestStatisticWeights::b)
        .def_property_readonly("mu_tilde", &TestStatisticWeights::mu_tilde)
        .def_property_readonly("anchor", &TestStatisticWeights::anchor)
        .def_property_readonly("pair_weights", &TestStatisticWeights::pair_weights)
        .def(
            "approx_llr",
            [](const TestStatisticWeights &w, const Eigen::VectorXd &z)
            { return approx_llr(BinarySnapshot::from_signs(z), w, PairIndexMap(static_cast<std::size_t>(z.size()))); },
            py::arg("z"))
        .def(
            "approx_llr_batch",
            [](const TestStatisticWeights &w, const Eigen::MatrixXd &signs)
            { return approx_llr_batch(signs, w, PairIndexMap(static_cast<std::size_t>(signs.rows()))); },
            py::arg("signs"), "Sum of the per-snapshot values over the columns of an M x n sign matrix");
    m.def(
        "build_weights",
        [](const ScenarioConfig &s)
        {
            py::gil_scoped_release release;
            return build_weights(s);
        },
        py::arg("scenario"));
    m.def(
        "expected_approx_llr",
        [](double gamma, const TestStatisticWeights &w, const ScenarioConfig &s)
        { return expected_approx_llr(gamma, w, build_steering(s.sensors, s.zeta)); },
        py::arg("gamma"), py::arg("weights"), py::arg("scenario"));

    // ideal receiver
    py::class_<GaussianPair>(m, "GaussianPair")
        .def(py::init([](const Eigen::MatrixXd &r0, const Eigen::MatrixXd &r1)
                      { return GaussianPair(CovarianceMatrix(r0), CovarianceMatrix(r1)); }),
             py::arg("r0"), py::arg("r1"))
        .def_static("from_scenario", &make_gaussian_pair, py::arg("scenario"))
        .def_property_readonly("logdet0", &GaussianPair::logdet0)
        .def_property_readonly("logdet1", &GaussianPair::logdet1)
        .def("exact_llr", &GaussianPair::llr, py::arg("y"))
        .def("expected_exact_llr", &GaussianPair::expected_llr, py::arg("r_data"));

    // sequential test
    m.def(
        "thresholds",
        [](double a1, double a2)
        {
            const auto th = thresholds(a1, a2);
            return py::make_tuple(th.lower, th.upper);
        },
        py::arg("alpha1"), py::arg("alpha2"), "(lower, upper) log-likelihood boundaries");
    m.def(
        "run_sprt",
        [](const std::vector<double> &increments, double lower, double upper, std::size_t max_steps)
        {
            const auto o = run_sprt(std::span<const double>(increments), SprtThresholds{lower, upper}, max_steps);
            return py::make_tuple(std::string(to_string(o.decision)), o.stop_step, o.final_llr);
        },
        py::arg("increments"), py::arg("lower"), py::arg("upper"), py::arg("max_steps"),
        "(decision, stop_step, final_llr), decision in {'H0', 'H1', 'truncated'}");
    m.def(
        "asn",
        [](double e0, double e1, double a1, double a2)
        {
            const auto a = asn(e0, e1, a1, a2);
            return py::make_tuple(a.asn0, a.asn1);
        },
        py::arg("mean_increment_h0"), py::arg("mean_increment_h1"), py::arg("alpha1"), py::arg("alpha2"));
    m.def("efficiency", &efficiency, py::arg("asn_ideal"), py::arg("asn_1bit"));
    m.def("latency", &latency, py::arg("asn"), py::arg("bandwidth_hz"));

    // simulation
    m.def(
        "run_experiment",
        [](const ScenarioConfig &s, std::size_t runs, const std::string &truth, const std::string &receiver,
           std::size_t horizon)
        {
            ExperimentSpec spec;
            spec.scenario = s;
            spec.runs = runs;
            spec.truth = parse_truth(truth);
            spec.receiver = parse_receiver(receiver);
            spec.horizon = horizon;
            ExperimentReport report;
            {
                py::gil_scoped_release release;
                report = run_experiment(spec);
            }
            return report_to_dict(report);
        },
        py::arg("scenario"), py::arg("runs") = 200, py::arg("truth") = "H1", py::arg("receiver") = "1bit",
        py::arg("horizon") = 0);

    // command layer
    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("sensor_min", &RunConfig::sensor_min)
        .def_readwrite("sensor_max", &RunConfig::sensor_max)
        .def_readwrite("onebit_sensors", &RunConfig::onebit_sensors)
        .def_readwrite("ideal_sensors", &RunConfig::ideal_sensors)
        .def_readwrite("zeta_deg", &RunConfig::zeta_deg)
        .def_readwrite("snr0_db", &RunConfig::snr0_db)
        .def_readwrite("snr1_db", &RunConfig::snr1_db)
        .def_readwrite("alpha1", &RunConfig::alpha1)
        .def_readwrite("alpha2", &RunConfig::alpha2)
        .def_readwrite("bandwidth_hz", &RunConfig::bandwidth_hz)
        .def_readwrite("runs", &RunConfig::runs)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("horizon_ms", &RunConfig::horizon_ms)
        .def_readwrite("max_steps", &RunConfig::max_steps)
        .def_readwrite("moment_cache", &RunConfig::moment_cache);
    m.def(
        "efficiency_table",
        [](const RunConfig &c)
        {
            py::gil_scoped_release release;
            return cmd_efficiency(c).str();
        },
        py::arg("config"), "CSV text: S, chi_g0, chi_g1");
    m.def(
        "asn_table",
        [](const RunConfig &c)
        {
            py::gil_scoped_release release;
            return cmd_asn_table(c).str();
        },
        py::arg("config"), "CSV text: S and the four latencies in ms");
    m.def(
        "simulate",
        [](const RunConfig &c)
        {
            SimulationResult result;
            {
                py::gil_scoped_release release;
                result = cmd_simulate(c);
            }
            py::dict d;
            for (std::size_t k = 0; k < result.series.size(); ++k)
                d[py::str(result.series[k].name)] = result.trajectories[k].str();
            d["summary"] = result.summary.str();
            return d;
        },
        py::arg("config"), "CSV text per series name plus 'summary'");
}
