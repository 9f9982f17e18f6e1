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

#include "onebit/montecarlo.hpp"

#include "onebit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace onebit
{
    std::string_view to_string(Receiver r) { return r == Receiver::OneBit ? "1bit" : "ideal"; }

    std::string_view to_string(Hypothesis h) { return h == Hypothesis::H0 ? "H0" : "H1"; }

    Detector Detector::one_bit(const ScenarioConfig &scenario, const MomentCache *cache)
    {
        auto model = build_replacement_model(scenario, cache);
        const double e0 = model.expected_increment_h0();
        const double e1 = model.expected_increment_h1();
        return Detector(Receiver::OneBit, scenario, Model(std::move(model)), e0, e1);
    }

    Detector Detector::ideal(const ScenarioConfig &scenario)
    {
        auto pair = make_gaussian_pair(scenario);
        const double e0 = pair.expected_llr(pair.r0());
        const double e1 = pair.expected_llr(pair.r1());
        return Detector(Receiver::Ideal, scenario, Model(std::move(pair)), e0, e1);
    }

    Detector Detector::make(Receiver receiver, const ScenarioConfig &scenario, const MomentCache *cache)
    {
        return receiver == Receiver::OneBit ? one_bit(scenario, cache) : ideal(scenario);
    }

    double Detector::increment(const Eigen::Ref<const Eigen::VectorXd> &y) const
    {
        if (static_cast<std::size_t>(y.size()) != scenario_.dimension())
            throw std::invalid_argument("Detector: snapshot dimension does not match the scenario");
        if (const auto *model = replacement_model())
            return model->weights.evaluate(quantize_sign(y).signs());
        return std::get<GaussianPair>(model_).llr(y);
    }

    double Detector::expected_increment(Hypothesis truth) const
    {
        return truth == Hypothesis::H0 ? expected_h0_ : expected_h1_;
    }

    double Detector::analytic_asn(Hypothesis truth) const
    {
        const auto pair = asn(expected_h0_, expected_h1_, scenario_.alpha1, scenario_.alpha2);
        return truth == Hypothesis::H0 ? pair.asn0 : pair.asn1;
    }

    namespace
    {
        constexpr std::size_t runs_per_block = 16;

        // Used when the analytic ASN is undefined (no separation between the hypotheses).
        constexpr std::size_t fallback_max_steps = 10000;

        void accumulate_held(const std::vector<double> &path, std::size_t horizon, std::vector<double> &sum,
                             std::vector<double> &sum_sq)
        {
            double held = 0.0;
            for (std::size_t n = 0; n < horizon; ++n)
            {
                if (n < path.size())
                    held = path[n];
                sum[n] += held;
                sum_sq[n] += held * held;
            }
        }

        std::size_t resolve_max_steps(const ExperimentSpec &spec, const Detector &detector)
        {
            if (spec.scenario.max_steps != 0)
            {
                if (spec.horizon > spec.scenario.max_steps)
                    throw std::invalid_argument("run_experiment: trajectory horizon exceeds max_steps");
                return spec.scenario.max_steps;
            }
            std::size_t cap = fallback_max_steps;
            const double e0 = detector.expected_increment(Hypothesis::H0);
            const double e1 = detector.expected_increment(Hypothesis::H1);
            if (e0 < 0.0 && e1 > 0.0)
                cap = static_cast<std::size_t>(100.0 * std::ceil(detector.analytic_asn(spec.truth)));
            return std::max(cap, spec.horizon);
        }

        template <typename Increment>
        SprtOutcome simulate_run(const SnapshotSampler &sampler, Increment &&increment, const SprtThresholds &th,
                                 std::size_t max_steps, std::size_t horizon, Rng rng, std::vector<double> &path)
        {
            Eigen::VectorXd white, y;
            SequentialTest test(th);
            path.clear();
            while (test.steps() < max_steps)
            {
                sampler.draw(rng, white, y);
                const auto decision = test.step(increment(y));
                if (test.steps() <= horizon)
                    path.push_back(test.llr());
                if (decision)
                    return {*decision, test.steps(), test.llr()};
            }
            return {Decision::Truncated, test.steps(), test.llr()};
        }
    }

    ExperimentReport run_experiment(const ExperimentSpec &spec, const MomentCache *cache)
    {
        return run_experiment(spec, Detector::make(spec.receiver, spec.scenario, cache));
    }

    ExperimentReport run_experiment(const ExperimentSpec &spec, const Detector &detector)
    {
        spec.scenario.validate();
        if (spec.runs == 0)
            throw std::invalid_argument("run_experiment: at least one run is required");
        if (detector.receiver() != spec.receiver || detector.scenario().dimension() != spec.scenario.dimension())
            throw std::invalid_argument("run_experiment: detector does not match the experiment");

        ExperimentReport report;
        report.runs = spec.runs;
        report.thresholds = thresholds(spec.scenario.alpha1, spec.scenario.alpha2);
        report.max_steps = resolve_max_steps(spec, detector);
        report.analytic_increment = detector.expected_increment(spec.truth);
        {
            const double e0 = detector.expected_increment(Hypothesis::H0);
            const double e1 = detector.expected_increment(Hypothesis::H1);
            report.analytic_asn = (e0 < 0.0 && e1 > 0.0) ? detector.analytic_asn(spec.truth)
                                                         : std::numeric_limits<double>::quiet_NaN();
        }

        const auto steering = build_steering(spec.scenario.sensors, spec.scenario.zeta);
        const double gamma = spec.truth == Hypothesis::H0 ? spec.scenario.gamma0 : spec.scenario.gamma1;
        const SnapshotSampler sampler(build_covariance(steering, gamma));

        const std::size_t horizon = spec.horizon;
        const std::size_t blocks = (spec.runs + runs_per_block - 1) / runs_per_block;
        report.outcomes.resize(spec.runs);
        std::vector<std::vector<double>> block_sum(blocks), block_sum_sq(blocks);

        parallel_for(blocks, [&](std::size_t blk)
                     {
            std::vector<double> path;
            block_sum[blk].assign(horizon, 0.0);
            block_sum_sq[blk].assign(horizon, 0.0);
            const std::size_t first = blk * runs_per_block;
            const std::size_t last = std::min(spec.runs, first + runs_per_block);
            for (std::size_t run = first; run < last; ++run)
            {
                const Rng rng = make_stream(spec.scenario.seed, run);
                SprtOutcome outcome;
                if (const auto *model = detector.replacement_model())
                {
                    const auto &w = model->weights;
                    Eigen::VectorXd signs;
                    outcome = simulate_run(
                        sampler,
                        [&](const Eigen::VectorXd &y)
                        {
                            signs = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
                            return w.evaluate(signs);
                        },
                        report.thresholds, report.max_steps, horizon, rng, path);
                }
                else
                {
                    const auto &pair = *detector.gaussian_pair();
                    outcome = simulate_run(
                        sampler, [&](const Eigen::VectorXd &y) { return pair.llr(y); }, report.thresholds,
                        report.max_steps, horizon, rng, path);
                }
                report.outcomes[run] = outcome;
                if (horizon > 0)
                    accumulate_held(path, horizon, block_sum[blk], block_sum_sq[blk]);
            } });

        // decisions and stopping times, reduced in run order
        double steps_sum = 0.0, steps_sum_sq = 0.0;
        for (const auto &o : report.outcomes)
        {
            switch (o.decision)
            {
            case Decision::H0:
                ++report.decided_h0;
                break;
            case Decision::H1:
                ++report.decided_h1;
                break;
            case Decision::Truncated:
                ++report.truncated;
                continue;
            }
            const auto s = static_cast<double>(o.stop_step);
            steps_sum += s;
            steps_sum_sq += s * s;
        }

        const std::size_t decided = report.decided_h0 + report.decided_h1;
        report.truncation_rate = static_cast<double>(report.truncated) / static_cast<double>(spec.runs);
        if (decided > 0)
        {
            const auto n = static_cast<double>(decided);
            report.empirical_asn.mean = steps_sum / n;
            if (decided > 1)
            {
                const double var = std::max(0.0, (steps_sum_sq - n * report.empirical_asn.mean * report.empirical_asn.mean) / (n - 1.0));
                report.empirical_asn.std_error = std::sqrt(var / n);
            }

            const std::size_t wrong = spec.truth == Hypothesis::H0 ? report.decided_h1 : report.decided_h0;
            const double p = static_cast<double>(wrong) / n;
            report.error_rate = p;
            report.error_stderr = std::sqrt(p * (1.0 - p) / n);
            const double z = 1.959963984540054;
            const double denom = 1.0 + z * z / n;
            const double center = (p + z * z / (2.0 * n)) / denom;
            const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
            report.error_ci_low = std::max(0.0, center - half);
            report.error_ci_high = std::min(1.0, center + half);
        }
        else
        {
            report.empirical_asn.mean = std::numeric_limits<double>::quiet_NaN();
            report.empirical_asn.std_error = std::numeric_limits<double>::quiet_NaN();
        }

        if (horizon > 0)
        {
            std::vector<double> sum(horizon, 0.0), sum_sq(horizon, 0.0);
            for (std::size_t blk = 0; blk < blocks; ++blk)
                for (std::size_t n = 0; n < horizon; ++n)
                {
                    sum[n] += block_sum[blk][n];
                    sum_sq[n] += block_sum_sq[blk][n];
                }
            const auto runs = static_cast<double>(spec.runs);
            report.trajectory.resize(horizon);
            report.trajectory_stderr.resize(horizon);
            for (std::size_t n = 0; n < horizon; ++n)
            {
                const double mean = sum[n] / runs;
                report.trajectory[n] = mean;
                const double var = spec.runs > 1 ? std::max(0.0, (sum_sq[n] - runs * mean * mean) / (runs - 1.0)) : 0.0;
                report.trajectory_stderr[n] = std::sqrt(var / runs);
            }
        }
        return report;
    }

    std::vector<double> aggregate_trajectories(const std::vector<std::vector<double>> &paths, std::size_t horizon)
    {
        if (paths.empty())
            throw std::invalid_argument("aggregate_trajectories: no runs to aggregate");
        std::vector<double> sum(horizon, 0.0), sum_sq(horizon, 0.0);
        for (const auto &p : paths)
        {
            if (p.size() > horizon)
                throw std::invalid_argument("aggregate_trajectories: path longer than the horizon");
            accumulate_held(p, horizon, sum, sum_sq);
        }
        for (auto &v : sum)
            v /= static_cast<double>(paths.size());
        return sum;
    }

    double trajectory_slope(const std::vector<double> &trajectory, std::size_t first, std::size_t last)
    {
        if (last > trajectory.size() || last < first + 2)
            throw std::invalid_argument("trajectory_slope: window needs at least two points inside the trajectory");
        const auto n = static_cast<double>(last - first);
        double sx = 0.0, sy = 0.0;
        for (std::size_t k = first; k < last; ++k)
        {
            sx += static_cast<double>(k + 1);
            sy += trajectory[k];
        }
        const double mx = sx / n, my = sy / n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t k = first; k < last; ++k)
        {
            const double dx = static_cast<double>(k + 1) - mx;
            sxx += dx * dx;
            sxy += dx * (trajectory[k] - my);
        }
        return sxy / sxx;
    }
}
