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

#include "onebit/orthant.hpp"

#include "onebit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onebit
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

        // (i, j) with complement (k, l), one row per pair
        constexpr std::array<std::array<int, 4>, 6> pair_partitions = {{
            {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1},
        }};

        void validate_correlation4(const Eigen::Matrix4d &sigma)
        {
            if (!sigma.allFinite())
                throw std::invalid_argument("orthant4: correlation matrix must be finite");
            if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
                throw std::invalid_argument("orthant4: correlation matrix must be symmetric");
            if ((sigma.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12)
                throw std::invalid_argument("orthant4: correlation matrix must have a unit diagonal");
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(sigma, Eigen::EigenvaluesOnly);
            if (eig.eigenvalues().minCoeff() < -1e-10)
                throw std::invalid_argument("orthant4: correlation matrix is not positive semidefinite");
        }

        double det3(const Eigen::Matrix3d &m) { return m.determinant(); }

        // d E4 / du at t = 1 - u^2 along C(t) = I + t (sigma - I).
        //
        // With sigma = V diag(lambda) V^T, C(t) = V diag(d) V^T, d_m = u^2 + t lambda_m.
        // The 3 x 3 minors entering the conditional correlation follow from Cauchy-Binet as
        // sums over the eigen-triples, so they stay accurate when sigma is singular and the
        // minors vanish like powers of u.
        class QuadMomentIntegrand
        {
        public:
            explicit QuadMomentIntegrand(const Eigen::Matrix4d &sigma)
            {
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(sigma);
                lambda_ = eig.eigenvalues().cwiseMax(0.0);
                const Eigen::Matrix4d &v = eig.eigenvectors();

                for (std::size_t p = 0; p < pair_partitions.size(); ++p)
                {
                    const auto [i, j, k, l] = pair_partitions[p];
                    rho_[p] = sigma(i, j);
                    for (int y = 0; y < 4; ++y)
                    {
                        // eigen-triple: all columns except y, ascending
                        std::array<int, 3> cols{};
                        for (int m = 0, c = 0; m < 4; ++m)
                            if (m != y)
                                cols[c++] = m;
                        Eigen::Matrix3d rows_k, rows_l;
                        const std::array<int, 3> rk = {i, j, k}, rl = {i, j, l};
                        for (int a = 0; a < 3; ++a)
                            for (int c = 0; c < 3; ++c)
                            {
                                rows_k(a, c) = v(rk[a], cols[c]);
                                rows_l(a, c) = v(rl[a], cols[c]);
                            }
                        const double mk = det3(rows_k), ml = det3(rows_l);
                        w_kk_[p][y] = mk * mk;
                        w_ll_[p][y] = ml * ml;
                        w_kl_[p][y] = mk * ml;
                    }
                }
            }

            double operator()(double u) const
            {
                const double u2 = u * u;
                const double t = 1.0 - u2;
                std::array<double, 4> d{};
                for (int m = 0; m < 4; ++m)
                    d[m] = u2 + t * lambda_[m];
                std::array<double, 4> skip{}; // product of d over all but one index
                for (int y = 0; y < 4; ++y)
                {
                    skip[y] = 1.0;
                    for (int m = 0; m < 4; ++m)
                        if (m != y)
                            skip[y] *= d[m];
                }

                double sum = 0.0;
                for (std::size_t p = 0; p < pair_partitions.size(); ++p)
                {
                    const double rho = rho_[p];
                    if (rho == 0.0)
                        continue;

                    // 1 - (t rho)^2 without cancellation when |rho| = 1
                    const double abs_rho = std::abs(rho);
                    const double den = ((1.0 - abs_rho) + abs_rho * u2) * (1.0 + t * abs_rho);
                    if (!(den > 0.0))
                        continue;

                    double var_k = 0.0, var_l = 0.0, cov_kl = 0.0;
                    for (int y = 0; y < 4; ++y)
                    {
                        var_k += w_kk_[p][y] * skip[y];
                        var_l += w_ll_[p][y] * skip[y];
                        cov_kl += w_kl_[p][y] * skip[y];
                    }
                    const double scale = var_k * var_l;
                    if (!(scale > 0.0))
                        continue;

                    const double conditional = clamp_unit(cov_kl / std::sqrt(scale));
                    sum += rho * std::asin(conditional) / std::sqrt(den);
                }
                return 2.0 * u * (4.0 / (pi * pi)) * sum;
            }

        private:
            std::array<double, 6> rho_{};
            Eigen::Vector4d lambda_;
            std::array<std::array<double, 4>, 6> w_kk_{}, w_ll_{}, w_kl_{};
        };
    }

    double orthant2(double rho)
    {
        if (!(std::abs(rho) <= 1.0))
            throw std::invalid_argument("orthant2: correlation must lie in [-1, 1]");
        return 0.25 + std::asin(rho) / (2.0 * pi);
    }

    double orthant3(const Eigen::Matrix3d &sigma)
    {
        const double r12 = sigma(0, 1), r13 = sigma(0, 2), r23 = sigma(1, 2);
        if (!(std::abs(r12) <= 1.0 && std::abs(r13) <= 1.0 && std::abs(r23) <= 1.0))
            throw std::invalid_argument("orthant3: correlations must lie in [-1, 1]");
        return 0.125 + (std::asin(r12) + std::asin(r13) + std::asin(r23)) / (4.0 * pi);
    }

    double detail::quad_moment_unchecked(const Eigen::Matrix4d &sigma)
    {
        if (sigma(0, 1) == 0.0 && sigma(0, 2) == 0.0 && sigma(0, 3) == 0.0 && sigma(1, 2) == 0.0 &&
            sigma(1, 3) == 0.0 && sigma(2, 3) == 0.0)
            return 0.0;
        const auto result = integrate_adaptive(QuadMomentIntegrand(sigma), 0.0, 1.0, orthant4_tolerance);
        return clamp_unit(result.value);
    }

    double quad_moment(const Eigen::Matrix4d &sigma)
    {
        validate_correlation4(sigma);
        return detail::quad_moment_unchecked(sigma);
    }

    double orthant4(const Eigen::Matrix4d &sigma)
    {
        validate_correlation4(sigma);
        double arcsines = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                arcsines += std::asin(clamp_unit(sigma(i, j)));
        const double e4 = detail::quad_moment_unchecked(sigma);
        return std::clamp((1.0 + (2.0 / pi) * arcsines + e4) / 16.0, 0.0, 1.0);
    }
}
