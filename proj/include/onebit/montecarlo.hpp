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

#ifndef ONEBIT_MONTECARLO_HPP
#define ONEBIT_MONTECARLO_HPP

#include "onebit/binary_model.hpp"
#include "onebit/ideal_receiver.hpp"
#include "onebit/sprt.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace onebit
{
    enum class Receiver
    {
        OneBit,
        Ideal
    };

    enum class Hypothesis
    {
        H0,
        H1
    };

    std::string_view to_string(Receiver r);
    std::string_view to_string(Hypothesis h);

    // Per-snapshot LLR of one receiver type, precomputed once per scenario.
    // Immutable; shared read-only by all runs.
    class Detector
    {
    public:
        // One-bit receiver: data are quantized, the statistic is the replacement-model LLR.
        static Detector one_bit(const ScenarioConfig &scenario, const MomentCache *cache = nullptr);
        // Unquantized receiver with the exact Gaussian LLR.
        static Detector ideal(const ScenarioConfig &scenario);
        static Detector make(Receiver receiver, const ScenarioConfig &scenario, const MomentCache *cache = nullptr);

        Receiver receiver() const { return receiver_; }
        const ScenarioConfig &scenario() const { return scenario_; }

        // LLR increment for one analog snapshot; sign quantization is applied for OneBit.
        double increment(const Eigen::Ref<const Eigen::VectorXd> &y) const;

        // Analytic E[increment] under the given truth.
        double expected_increment(Hypothesis truth) const;

        // Wald ASN prediction under the given truth; throws if the increments are not
        // of opposite sign (e.g. gamma0 == gamma1).
        double analytic_asn(Hypothesis truth) const;

        // Set for OneBit only.
        const ReplacementModel *replacement_model() const { return std::get_if<ReplacementModel>(&model_); }
        const GaussianPair *gaussian_pair() const { return std::get_if<GaussianPair>(&model_); }

    private:
        using Model = std::variant<ReplacementModel, GaussianPair>;

        Detector(Receiver receiver, ScenarioConfig scenario, Model model, double e0, double e1)
            : receiver_(receiver), scenario_(std::move(scenario)), model_(std::move(model)), expected_h0_(e0),
              expected_h1_(e1)
        {
        }

        Receiver receiver_;
        ScenarioConfig scenario_;
        Model model_;
        double expected_h0_, expected_h1_;
    };

    struct ExperimentSpec
    {
        ScenarioConfig scenario;
        std::size_t runs = 200;
        Hypothesis truth = Hypothesis::H1;
        Receiver receiver = Receiver::OneBit;
        std::size_t horizon = 0; // trajectory length in steps, 0 = no trajectory
    };

    struct Estimate
    {
        double mean = 0.0;
        double std_error = 0.0;
    };

    struct ExperimentReport
    {
        std::size_t runs = 0;
        std::size_t decided_h0 = 0, decided_h1 = 0, truncated = 0;
        std::size_t max_steps = 0;

        Estimate empirical_asn;   // stop step over decided runs
        double error_rate = 0.0;  // wrong decisions / decided runs
        double error_stderr = 0.0;
        double error_ci_low = 0.0, error_ci_high = 1.0; // Wilson 95 %
        double truncation_rate = 0.0;

        // Mean accumulated LLR after steps 1..horizon; a stopped run holds its final value.
        std::vector<double> trajectory;
        std::vector<double> trajectory_stderr;

        double analytic_increment = 0.0; // slope of the analytic overlay, per step
        double analytic_asn = 0.0;       // NaN if undefined
        SprtThresholds thresholds;

        std::vector<SprtOutcome> outcomes; // one per run, in run order
    };

    // Seeded simulation; run k uses the stream seed + k. Bitwise reproducible for a
    // fixed spec, independent of the worker count.
    ExperimentReport run_experiment(const ExperimentSpec &spec, const MomentCache *cache = nullptr);
    ExperimentReport run_experiment(const ExperimentSpec &spec, const Detector &detector);

    // Elementwise mean of per-run paths; each path (length <= horizon) is extended to the
    // horizon by holding its last value (0 for an empty path). Throws on an empty set.
    std::vector<double> aggregate_trajectories(const std::vector<std::vector<double>> &paths, std::size_t horizon);

    // Least-squares slope of trajectory[first..last) against the step number (first step = 1).
    double trajectory_slope(const std::vector<double> &trajectory, std::size_t first, std::size_t last);
}

#endif
