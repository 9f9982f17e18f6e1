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

#ifndef ONEBIT_QUADRATURE_HPP
#define ONEBIT_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace onebit
{
    struct QuadratureResult
    {
        double value = 0.0;
        double error = 0.0;         // Sum of |K15 - G7| over the final partition
        std::size_t intervals = 0;
        bool converged = false;
    };

    namespace detail
    {
        // Kronrod nodes on [0, 1); odd indices are the embedded Gauss nodes.
        inline constexpr std::array<double, 8> kronrod_nodes = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

        inline constexpr std::array<double, 8> kronrod_weights = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

        inline constexpr std::array<double, 4> gauss_weights = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Segment
        {
            double a, b, value, error;
            bool operator<(const Segment &other) const { return error < other.error; }
        };

        template <typename F>
        Segment gauss_kronrod_15(F &f, double a, double b)
        {
            const double center = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            const double fc = f(center);
            double kronrod = fc * kronrod_weights[7];
            double gauss = fc * gauss_weights[3];
            for (std::size_t j = 0; j < 7; ++j)
            {
                const double dx = half * kronrod_nodes[j];
                const double pair = f(center - dx) + f(center + dx);
                kronrod += kronrod_weights[j] * pair;
                if (j % 2 == 1)
                    gauss += gauss_weights[j / 2] * pair;
            }
            return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
        }
    }

    // Globally adaptive G7-K15 integration of f over [a, b] to an absolute error target.
    // The integrand is never evaluated at the end points.
    template <typename F>
    QuadratureResult integrate_adaptive(F &&f, double a, double b, double abs_tol, std::size_t max_intervals = 4096)
    {
        std::priority_queue<detail::Segment> heap;
        heap.push(detail::gauss_kronrod_15(f, a, b));
        double total = heap.top().value;
        double error = heap.top().error;

        while (error > abs_tol && heap.size() < max_intervals)
        {
            const auto worst = heap.top();
            // interval too small to split further in double precision
            const double mid = 0.5 * (worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b))
                break;
            heap.pop();
            const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
            const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
            total += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }

        // re-sum to drop the accumulated rounding of the running totals
        QuadratureResult result;
        result.intervals = heap.size();
        while (!heap.empty())
        {
            result.value += heap.top().value;
            result.error += heap.top().error;
            heap.pop();
        }
        result.converged = result.error <= abs_tol;
        return result;
    }
}

#endif
