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


#include "onebit/sprt.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

using namespace onebit;

TEST_SUITE("sprt")
{
    TEST_CASE("thresholds")
    {
        const auto a = thresholds(1e-3, 1e-3);
        CHECK(a.lower == doctest::Approx(-6.9068).epsilon(1e-5));
        CHECK(a.upper == doctest::Approx(std::log(999.0)).epsilon(1e-14));
        const auto b = thresholds(1e-9, 1e-9);
        CHECK(b.upper == doctest::Approx(std::log(1e9 - 1.0)).epsilon(1e-14));
        CHECK(b.upper == doctest::Approx(20.723).epsilon(1e-4));
        const auto c = thresholds(0.05, 0.2);
        CHECK(c.lower == doctest::Approx(std::log(0.2 / 0.95)));
        CHECK(c.lower == doctest::Approx(-1.5581).epsilon(1e-4));
        CHECK(c.upper == doctest::Approx(2.7726).epsilon(1e-4));

        CHECK_THROWS_AS(thresholds(0.0, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(thresholds(0.1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(thresholds(0.6, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(thresholds(std::nan(""), 0.1), std::invalid_argument);
    }

    TEST_CASE("engine boundaries")
    {
        const auto th = thresholds(1e-3, 1e-3);
        const std::vector<double> up(5, th.upper);
        const auto o1 = run_sprt(up, th, 100);
        CHECK(o1.decision == Decision::H1);
        CHECK(o1.stop_step == 1);
        CHECK(o1.final_llr >= th.upper);

        const std::vector<double> down(5, th.lower);
        const auto o2 = run_sprt(down, th, 100);
        CHECK(o2.decision == Decision::H0);
        CHECK(o2.stop_step == 1);

        const std::vector<double> zeros(1000, 0.0);
        const auto o3 = run_sprt(zeros, th, 250);
        CHECK(o3.decision == Decision::Truncated);
        CHECK(o3.stop_step == 250);

        const auto o4 = run_sprt(std::span<const double>(), th, 10);
        CHECK(o4.decision == Decision::Truncated);
        CHECK(o4.stop_step == 0);

        // stream exhausted before a decision
        const auto o5 = run_sprt(std::vector<double>{1.0, 1.0}, th, 10);
        CHECK(o5.decision == Decision::Truncated);
        CHECK(o5.stop_step == 2);
        CHECK(o5.final_llr == 2.0);

        // generator form
        int calls = 0;
        const auto o6 = run_sprt([&]() -> std::optional<double> { ++calls; return 1.0; }, th, 100);
        CHECK(o6.decision == Decision::H1);
        CHECK(o6.stop_step == 7);
        CHECK(calls == 7);

        CHECK(to_string(Decision::H0) == "H0");
        CHECK(to_string(Decision::Truncated) == "truncated");
    }

    TEST_CASE("outcome invariants on random walks")
    {
        const auto th = thresholds(0.01, 0.02);
        std::mt19937_64 rng(17);
        std::normal_distribution<double> normal(0.01, 0.4);
        for (int run = 0; run < 500; ++run)
        {
            const auto o = run_sprt([&]() -> std::optional<double> { return normal(rng); }, th, 300);
            switch (o.decision)
            {
            case Decision::H1:
                CHECK(o.final_llr >= th.upper);
                break;
            case Decision::H0:
                CHECK(o.final_llr <= th.lower);
                break;
            case Decision::Truncated:
                CHECK(o.stop_step == 300);
                CHECK(o.final_llr > th.lower);
                CHECK(o.final_llr < th.upper);
                break;
            }
            CHECK(o.stop_step >= 1);
        }
    }

    TEST_CASE("scalar Gaussian mean shift against Wald's ASN")
    {
        // H0: x ~ N(0, 1), H1: x ~ N(delta, 1); LLR increment delta x - delta^2 / 2
        constexpr double delta = 0.3, alpha = 1e-3;
        constexpr int runs = 10'000;
        const auto th = thresholds(alpha, alpha);
        const double d = 0.5 * delta * delta;
        const auto predicted = asn(-d, d, alpha, alpha);
        for (double mean : {0.0, delta})
        {
            std::mt19937_64 rng(mean == 0.0 ? 1 : 2);
            std::normal_distribution<double> normal(mean, 1.0);
            double steps = 0.0;
            int wrong = 0;
            for (int run = 0; run < runs; ++run)
            {
                const auto o = run_sprt([&]() -> std::optional<double> { return delta * normal(rng) - d; }, th,
                                        1'000'000);
                steps += static_cast<double>(o.stop_step);
                wrong += (mean == 0.0) ? o.decision == Decision::H1 : o.decision == Decision::H0;
            }
            const double empirical = steps / runs;
            const double expected = mean == 0.0 ? predicted.asn0 : predicted.asn1;
            CHECK(std::abs(empirical - expected) / expected < 0.10);
            CHECK(wrong <= runs * alpha + 3.0 * std::sqrt(runs * alpha * (1 - alpha)));
        }
    }

    TEST_CASE("ASN formula")
    {
        const auto n = wald_numerators(1e-3, 1e-3);
        CHECK(n.h1 == doctest::Approx((1 - 2e-3) * std::log(999.0)).epsilon(1e-14));
        CHECK(n.h1 == doctest::Approx(6.893).epsilon(1e-4));
        CHECK(n.h0 == doctest::Approx(-n.h1).epsilon(1e-14));

        for (double d : {1e-4, 0.01, 0.3})
        {
            const auto a = asn(-d, d, 1e-3, 1e-3);
            CHECK(a.asn0 == doctest::Approx(6.893 / d).epsilon(1e-4));
            CHECK(a.asn1 == doctest::Approx(a.asn0).epsilon(1e-14));
        }

        // antitone in the drift, divergent as alpha -> 0
        CHECK(asn(-0.1, 0.1, 1e-3, 1e-3).asn1 > asn(-0.2, 0.2, 1e-3, 1e-3).asn1);
        double previous = 0.0;
        for (double a : {1e-2, 1e-4, 1e-8, 1e-16, 1e-300})
        {
            const double v = asn(-0.1, 0.1, a, a).asn1;
            CHECK(v > previous);
            previous = v;
        }
        CHECK(previous > 6000.0);

        CHECK_THROWS_AS(asn(0.1, 0.2, 1e-3, 1e-3), std::invalid_argument);
        CHECK_THROWS_AS(asn(-0.1, -0.2, 1e-3, 1e-3), std::invalid_argument);
        CHECK_THROWS_AS(asn(0.0, 0.0, 1e-3, 1e-3), std::invalid_argument);
    }

    TEST_CASE("efficiency and latency")
    {
        CHECK(efficiency(100.0, 100.0) == 1.0);
        CHECK(efficiency(30.0, 100.0) == doctest::Approx(0.3));
        CHECK(efficiency(200.0, 100.0) == 2.0); // unclamped
        CHECK_THROWS_AS(efficiency(0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(efficiency(1.0, -1.0), std::invalid_argument);

        CHECK(latency(2046.0, 2.046e6) == doctest::Approx(1e-3).epsilon(1e-15));
        CHECK(latency(1.0, 2.046e6) * 1e9 == doctest::Approx(488.76).epsilon(1e-5));
        CHECK(latency(10.0, 2.046e6) == doctest::Approx(10.0 * latency(1.0, 2.046e6)).epsilon(1e-15));

        // ratio of ASNs does not depend on alpha
        for (double a : {1e-3, 1e-9})
        {
            const auto one = asn(-0.002, 0.003, a, a);
            const auto ideal = asn(-0.007, 0.008, a, a);
            CHECK(efficiency(ideal.asn0, one.asn0) == doctest::Approx(0.002 / 0.007).epsilon(1e-13));
            CHECK(efficiency(ideal.asn1, one.asn1) == doctest::Approx(0.003 / 0.008).epsilon(1e-13));
        }

        const auto r = asn_report(-0.002, 0.003, -0.007, 0.008, 1e-9, 1e-9, 2.046e6);
        CHECK(r.latency1 == doctest::Approx(r.asn1 / 2.046e6));
        CHECK(r.efficiency0 == doctest::Approx(0.002 / 0.007));
        CHECK(r.efficiency1 == doctest::Approx(0.003 / 0.008));
    }
}
