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

#ifndef ONEBIT_ORTHANT_HPP
#define ONEBIT_ORTHANT_HPP

#include <Eigen/Dense>

namespace onebit
{
    /*!
     * Orthant probabilities and sign moments of zero-mean Gaussian vectors.
     *
     * For up to three variables the positive-orthant probability has a closed form in
     * terms of arcsin of the correlations. The four-variable case has none; it is
     * evaluated through Plackett's reduction: along the path C(t) = I + t (Sigma - I),
     *
     *     dP/dt = sum_{i<j} rho_ij phi_2(0, 0; t rho_ij) P(y_k > 0, y_l > 0 | y_i = y_j = 0),
     *
     * where {k, l} is the complement of {i, j}. The conditional probability is again a
     * bivariate orthant, so P reduces to a one-dimensional integral. The change of
     * variable t = 1 - u^2 removes the 1/sqrt(1 - t) singularity of fully correlated
     * pairs, and the integral is evaluated by adaptive Gauss-Kronrod quadrature.
     */

    // Absolute accuracy target of the four-variable routines.
    inline constexpr double orthant4_tolerance = 1e-12;

    // P(y1 > 0, y2 > 0) = 1/4 + arcsin(rho) / (2 pi)
    double orthant2(double rho);

    // P(y1 > 0, y2 > 0, y3 > 0) = 1/8 + (arcsin r12 + arcsin r13 + arcsin r23) / (4 pi)
    double orthant3(const Eigen::Matrix3d &sigma);

    // P(y > 0) for y ~ N(0, sigma), sigma a 4 x 4 correlation matrix.
    // Throws std::invalid_argument unless sigma is symmetric, unit-diagonal and PSD.
    double orthant4(const Eigen::Matrix4d &sigma);

    // E[sign(y1) sign(y2) sign(y3) sign(y4)] for y ~ N(0, sigma).
    // Related to orthant4 by P = (1 + (2/pi) sum_{i<j} arcsin rho_ij + E4) / 16.
    double quad_moment(const Eigen::Matrix4d &sigma);

    namespace detail
    {
        // quad_moment without input validation, for sub-blocks of a known correlation matrix.
        double quad_moment_unchecked(const Eigen::Matrix4d &sigma);
    }
}

#endif
