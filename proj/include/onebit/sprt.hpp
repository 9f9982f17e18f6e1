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

#ifndef ONEBIT_SPRT_HPP
#define ONEBIT_SPRT_HPP

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace onebit
{
    enum class Decision
    {
        H0,
        H1,
        Truncated
    };

    std::string_view to_string(Decision d);

    // Log-scale decision boundaries of Wald's test.
    struct SprtThresholds
    {
        double lower = 0.0; // ln(alpha2 / (1 - alpha1))
        double upper = 0.0; // ln((1 - alpha2) / alpha1)
    };

    struct SprtOutcome
    {
        Decision decision = Decision::Truncated;
        std::size_t stop_step = 0; // number of increments consumed
        double final_llr = 0.0;
    };

    // Requires 0 < alpha_i < 1 and alpha1 + alpha2 < 1; throws std::invalid_argument otherwise.
    SprtThresholds thresholds(double alpha1, double alpha2);

    // Accumulates increments and reports a decision after every step.
    class SequentialTest
    {
    public:
        explicit SequentialTest(SprtThresholds th) : th_(th) {}

        // Adds one increment; returns the decision once a boundary is hit (>= upper, <= lower).
        std::optional<Decision> step(double increment)
        {
            llr_ += increment;
            ++steps_;
            if (llr_ >= th_.upper)
                return Decision::H1;
            if (llr_ <= th_.lower)
                return Decision::H0;
            return std::nullopt;
        }

        double llr() const { return llr_; }
        std::size_t steps() const { return steps_; }
        const SprtThresholds &boundaries() const { return th_; }

    private:
        SprtThresholds th_;
        double llr_ = 0.0;
        std::size_t steps_ = 0;
    };

    // Runs the test on a stream: next() yields std::optional<double>, std::nullopt ends the
    // stream. Stops at the first boundary crossing or after max_steps increments.
    template <std::invocable Next>
    SprtOutcome run_sprt(Next &&next, const SprtThresholds &th, std::size_t max_steps)
    {
        SequentialTest test(th);
        while (test.steps() < max_steps)
        {
            const std::optional<double> inc = next();
            if (!inc)
                break;
            if (const auto d = test.step(*inc))
                return {*d, test.steps(), test.llr()};
        }
        return {Decision::Truncated, test.steps(), test.llr()};
    }

    SprtOutcome run_sprt(std::span<const double> increments, const SprtThresholds &th, std::size_t max_steps);

    // Numerators of Wald's ASN approximations under H0 and H1.
    struct WaldNumerators
    {
        double h0 = 0.0; // (1 - a1) ln(a2 / (1 - a1)) + a1 ln((1 - a2) / a1), negative
        double h1 = 0.0; // a2 ln(a2 / (1 - a1)) + (1 - a2) ln((1 - a2) / a1), positive
    };

    WaldNumerators wald_numerators(double alpha1, double alpha2);

    struct AsnPair
    {
        double asn0 = 0.0;
        double asn1 = 0.0;
    };

    // Wald's approximation; overshoot of the boundaries is neglected.
    // Requires mean_increment_h0 < 0 < mean_increment_h1.
    AsnPair asn(double mean_increment_h0, double mean_increment_h1, double alpha1, double alpha2);

    // chi = ASN_ideal / ASN_1bit; reported unclamped.
    double efficiency(double asn_ideal, double asn_1bit);

    // Seconds: asn * T_S with T_S = 1 / B.
    double latency(double asn, double bandwidth_hz);

    struct AsnReport
    {
        double asn0 = 0.0, asn1 = 0.0;
        double latency0 = 0.0, latency1 = 0.0;       // [s]
        double efficiency0 = 0.0, efficiency1 = 0.0; // relative to the ideal receiver
    };

    // ASN, latency and efficiency of a one-bit test against the ideal reference.
    AsnReport asn_report(double onebit_h0, double onebit_h1, double ideal_h0, double ideal_h1, double alpha1,
                         double alpha2, double bandwidth_hz);
}

#endif
