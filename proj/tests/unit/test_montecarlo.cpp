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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace onebit;

namespace
{
    struct WorkerGuard
    {
        std::size_t saved = parallel_workers();
        ~WorkerGuard() { parallel_workers() = saved; }
    };

    ExperimentSpec small_spec(Receiver receiver, Hypothesis truth)
    {
        ExperimentSpec spec;
        spec.scenario = ScenarioConfig::reference(2, 1e-2);
        spec.scenario.gamma1 = amplitude_from_db(-6.0);
        spec.scenario.gamma0 = amplitude_from_db(-12.0);
        spec.scenario.seed = 42;
        spec.runs = 37;
        spec.truth = truth;
        spec.receiver = receiver;
        spec.horizon = 120;
        return spec;
    }
}

TEST_SUITE("montecarlo")
{
    TEST_CASE("trajectory aggregation")
    {
        CHECK(aggregate_trajectories({{1.0, 2.0, 3.0}}, 3) == std::vector<double>{1.0, 2.0, 3.0});
        CHECK(aggregate_trajectories({{1.0, -2.0}, {-1.0, 2.0}}, 2) == std::vector<double>{0.0, 0.0});
        // a stopped run holds its last value
        CHECK(aggregate_trajectories({{1.0, 4.0}, {1.0, 2.0, 3.0, 5.0}}, 4) == std::vector<double>{1.0, 3.0, 3.5, 4.5});
        CHECK(aggregate_trajectories({{}, {2.0}}, 2) == std::vector<double>{1.0, 1.0});
        CHECK_THROWS_AS(aggregate_trajectories({{1.0, 2.0, 3.0}}, 2), std::invalid_argument);
        CHECK_THROWS_AS(aggregate_trajectories({}, 3), std::invalid_argument);
    }

    TEST_CASE("trajectory slope")
    {
        std::vector<double> line;
        for (int k = 1; k <= 50; ++k)
            line.push_back(0.25 * k - 3.0);
        CHECK(trajectory_slope(line, 0, 50) == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(trajectory_slope(line, 10, 20) == doctest::Approx(0.25).epsilon(1e-13));
        CHECK_THROWS_AS(trajectory_slope(line, 10, 11), std::invalid_argument);
        CHECK_THROWS_AS(trajectory_slope(line, 10, 60), std::invalid_argument);
    }

    TEST_CASE("identical hypotheses never decide")
    {
        ExperimentSpec spec = small_spec(Receiver::OneBit, Hypothesis::H1);
        spec.scenario.gamma0 = spec.scenario.gamma1;
        spec.scenario.max_steps = 300;
        const auto r = run_experiment(spec);
        CHECK(r.truncated == spec.runs);
        CHECK(r.truncation_rate == 1.0);
        CHECK(std::isnan(r.analytic_asn));
        for (const auto &o : r.outcomes)
        {
            CHECK(o.stop_step == 300);
            CHECK(o.final_llr == 0.0);
        }
        CHECK(r.trajectory == std::vector<double>(spec.horizon, 0.0));

        // without an explicit cap the fallback applies
        spec.scenario.max_steps = 0;
        spec.runs = 2;
        const auto fallback = run_experiment(spec);
        CHECK(fallback.max_steps == 10'000);
        CHECK(fallback.truncated == 2);
    }

    TEST_CASE("report invariants")
    {
        for (auto receiver : {Receiver::OneBit, Receiver::Ideal})
            for (auto truth : {Hypothesis::H0, Hypothesis::H1})
            {
                const auto spec = small_spec(receiver, truth);
                const auto r = run_experiment(spec);
                CHECK(r.runs == spec.runs);
                CHECK(r.decided_h0 + r.decided_h1 + r.truncated == spec.runs);
                CHECK(r.trajectory.size() == spec.horizon);
                CHECK(r.trajectory_stderr.size() == spec.horizon);
                CHECK(r.max_steps >= spec.horizon);
                CHECK(r.error_rate >= 0.0);
                CHECK(r.error_rate <= 1.0);
                CHECK(r.error_ci_low <= r.error_rate);
                CHECK(r.error_ci_high >= r.error_rate);
                CHECK(r.truncation_rate >= 0.0);
                CHECK(r.truncation_rate <= 1.0);
                CHECK(r.empirical_asn.mean > 0.0);
                for (const auto &o : r.outcomes)
                {
                    if (o.decision == Decision::H1)
                        CHECK(o.final_llr >= r.thresholds.upper);
                    if (o.decision == Decision::H0)
                        CHECK(o.final_llr <= r.thresholds.lower);
                    if (o.decision == Decision::Truncated)
                        CHECK(o.stop_step == r.max_steps);
                }
                const double sign = truth == Hypothesis::H1 ? 1.0 : -1.0;
                CHECK(sign * r.analytic_increment > 0.0);
            }
    }

    TEST_CASE("seeded runs are reproducible and independent of the worker count")
    {
        WorkerGuard guard;
        for (auto receiver : {Receiver::OneBit, Receiver::Ideal})
        {
            const auto spec = small_spec(receiver, Hypothesis::H1);
            parallel_workers() = 1;
            const auto a = run_experiment(spec);
            parallel_workers() = 3;
            const auto b = run_experiment(spec);
            parallel_workers() = 0;
            const auto c = run_experiment(spec);
            REQUIRE(a.outcomes.size() == b.outcomes.size());
            for (std::size_t k = 0; k < a.outcomes.size(); ++k)
            {
                CHECK(a.outcomes[k].stop_step == b.outcomes[k].stop_step);
                CHECK(a.outcomes[k].final_llr == b.outcomes[k].final_llr);
                CHECK(a.outcomes[k].final_llr == c.outcomes[k].final_llr);
            }
            CHECK(a.trajectory == b.trajectory);
            CHECK(a.trajectory == c.trajectory);
            CHECK(a.empirical_asn.mean == c.empirical_asn.mean);

            auto other = spec;
            other.scenario.seed = 43;
            CHECK(run_experiment(other).trajectory != a.trajectory);
        }
    }

    TEST_CASE("run k uses the stream seed + k")
    {
        auto spec = small_spec(Receiver::Ideal, Hypothesis::H0);
        const auto all = run_experiment(spec);
        spec.scenario.seed += 5;
        spec.runs = 3;
        const auto shifted = run_experiment(spec);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(shifted.outcomes[k].final_llr == all.outcomes[k + 5].final_llr);
    }

    TEST_CASE("trajectory holds the final value")
    {
        auto spec = small_spec(Receiver::Ideal, Hypothesis::H1);
        spec.runs = 1;
        spec.horizon = 5000;
        const auto r = run_experiment(spec);
        const auto &o = r.outcomes[0];
        REQUIRE(o.decision != Decision::Truncated);
        REQUIRE(o.stop_step < spec.horizon);
        CHECK(r.trajectory[o.stop_step - 1] == o.final_llr);
        CHECK(r.trajectory.back() == o.final_llr);
    }

    TEST_CASE("detector")
    {
        const auto s = ScenarioConfig::reference(3, 1e-3);
        const auto one = Detector::one_bit(s);
        const auto ideal = Detector::ideal(s);
        CHECK(one.replacement_model() != nullptr);
        CHECK(one.gaussian_pair() == nullptr);
        CHECK(ideal.gaussian_pair() != nullptr);
        CHECK(one.expected_increment(Hypothesis::H0) < 0.0);
        CHECK(ideal.expected_increment(Hypothesis::H1) > one.expected_increment(Hypothesis::H1));
        CHECK(one.analytic_asn(Hypothesis::H1) > ideal.analytic_asn(Hypothesis::H1));

        // the one-bit increment only sees signs (no zero entry, sign(0) = +1)
        const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(6, -1.0, 1.4);
        CHECK(one.increment(y) == one.increment(3.0 * y));
        CHECK(one.increment(y) == one.increment(-y));

        ExperimentSpec spec;
        spec.scenario = s;
        spec.receiver = Receiver::Ideal;
        CHECK_THROWS_AS(run_experiment(spec, one), std::invalid_argument);
        spec.runs = 0;
        CHECK_THROWS_AS(run_experiment(spec, ideal), std::invalid_argument);
        CHECK(to_string(Receiver::OneBit) == "1bit");
        CHECK(to_string(Hypothesis::H0) == "H0");
    }
}

TEST_SUITE("montecarlo_slow")
{
    TEST_CASE("ideal single sensor: empirical ASN within 10 % of the analytic value")
    {
        // 10^4 runs at -24 / -18 dB, truth H1, alpha = 1e-3
        ExperimentSpec spec;
        spec.scenario = ScenarioConfig::reference(1, 1e-3);
        spec.scenario.seed = 100;
        spec.runs = 10'000;
        spec.truth = Hypothesis::H1;
        spec.receiver = Receiver::Ideal;
        const auto r = run_experiment(spec);
        CHECK(r.truncated == 0);
        CHECK(std::abs(r.empirical_asn.mean - r.analytic_asn) / r.analytic_asn < 0.10);
        MESSAGE("empirical ASN " << r.empirical_asn.mean << " +- " << r.empirical_asn.std_error << ", analytic "
                                 << r.analytic_asn);
    }
}
