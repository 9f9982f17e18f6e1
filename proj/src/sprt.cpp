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

#include <cmath>
#include <stdexcept>

namespace onebit
{
    std::string_view to_string(Decision d)
    {
        switch (d)
        {
        case Decision::H0:
            return "H0";
        case Decision::H1:
            return "H1";
        case Decision::Truncated:
            return "truncated";
        }
        return "unknown";
    }

    namespace
    {
        void check_alphas(double alpha1, double alpha2)
        {
            if (!(alpha1 > 0.0 && alpha1 < 1.0) || !(alpha2 > 0.0 && alpha2 < 1.0))
                throw std::invalid_argument("error levels must lie in (0, 1)");
            if (alpha1 + alpha2 >= 1.0)
                throw std::invalid_argument("alpha1 + alpha2 must be below 1");
        }
    }

    SprtThresholds thresholds(double alpha1, double alpha2)
    {
        check_alphas(alpha1, alpha2);
        return {std::log(alpha2 / (1.0 - alpha1)), std::log((1.0 - alpha2) / alpha1)};
    }

    SprtOutcome run_sprt(std::span<const double> increments, const SprtThresholds &th, std::size_t max_steps)
    {
        std::size_t pos = 0;
        return run_sprt([&]() -> std::optional<double>
                        {
            if (pos == increments.size())
                return std::nullopt;
            return increments[pos++]; }, th, max_steps);
    }

    WaldNumerators wald_numerators(double alpha1, double alpha2)
    {
        const auto th = thresholds(alpha1, alpha2);
        return {(1.0 - alpha1) * th.lower + alpha1 * th.upper, alpha2 * th.lower + (1.0 - alpha2) * th.upper};
    }

    AsnPair asn(double mean_increment_h0, double mean_increment_h1, double alpha1, double alpha2)
    {
        if (!(mean_increment_h0 < 0.0) || !(mean_increment_h1 > 0.0))
            throw std::invalid_argument("asn: expected increments must satisfy E0[l] < 0 < E1[l]");
        const auto num = wald_numerators(alpha1, alpha2);
        return {num.h0 / mean_increment_h0, num.h1 / mean_increment_h1};
    }

    double efficiency(double asn_ideal, double asn_1bit)
    {
        if (!(asn_ideal > 0.0) || !(asn_1bit > 0.0))
            throw std::invalid_argument("efficiency: sample numbers must be positive");
        return asn_ideal / asn_1bit;
    }

    double latency(double asn, double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("latency: bandwidth must be positive");
        return asn / bandwidth_hz;
    }

    AsnReport asn_report(double onebit_h0, double onebit_h1, double ideal_h0, double ideal_h1, double alpha1,
                         double alpha2, double bandwidth_hz)
    {
        const auto onebit = asn(onebit_h0, onebit_h1, alpha1, alpha2);
        const auto ideal = asn(ideal_h0, ideal_h1, alpha1, alpha2);
        AsnReport r;
        r.asn0 = onebit.asn0;
        r.asn1 = onebit.asn1;
        r.latency0 = latency(onebit.asn0, bandwidth_hz);
        r.latency1 = latency(onebit.asn1, bandwidth_hz);
        r.efficiency0 = efficiency(ideal.asn0, onebit.asn0);
        r.efficiency1 = efficiency(ideal.asn1, onebit.asn1);
        return r;
    }
}
