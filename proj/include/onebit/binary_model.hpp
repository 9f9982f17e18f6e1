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

#ifndef ONEBIT_BINARY_MODEL_HPP
#define ONEBIT_BINARY_MODEL_HPP

#include "onebit/array_model.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace onebit
{
    class MomentCache;

    /*!
     * Exponential-family replacement model for sign-quantized snapshots.
     *
     * The sufficient statistics are the pairwise sign products phi(z) = [z_i z_j]_{i<j}.
     * Their mean follows from the arcsine law, their covariance from the arcsine law
     * together with the four-variable sign moment. The LLR between the two amplitudes
     * is approximated by
     *
     *     l(z) ~ b^T (phi(z) - mu_tilde),
     *     b = R_phi(g1)^{-1} mu_phi(g1) - R_phi(g0)^{-1} mu_phi(g0),
     *     mu_tilde = mu_phi((g0 + g1) / 2).
     */

    // Strict upper triangle of an M x M matrix in lexicographic order.
    class PairIndexMap
    {
    public:
        // Throws std::invalid_argument for M < 2.
        explicit PairIndexMap(std::size_t dimension);

        std::size_t dimension() const { return dimension_; }
        std::size_t size() const { return pairs_.size(); }
        const std::vector<std::pair<int, int>> &pairs() const { return pairs_; }
        const std::pair<int, int> &operator[](std::size_t k) const { return pairs_[k]; }

        // Flat index of (i, j), i != j, order of the arguments is irrelevant.
        std::size_t index(int i, int j) const;

    private:
        std::size_t dimension_;
        std::vector<std::pair<int, int>> pairs_;
    };

    inline PairIndexMap pair_index_map(std::size_t dimension) { return PairIndexMap(dimension); }

    // Mean and covariance of the pairwise statistics.
    struct StatisticsMoments
    {
        Eigen::VectorXd mu;
        Eigen::MatrixXd cov;
    };

    // Weights of the approximate LLR, shared by all statistics vectors of one scenario.
    class TestStatisticWeights
    {
    public:
        TestStatisticWeights(Eigen::VectorXd b, Eigen::VectorXd mu_tilde, const PairIndexMap &map);

        const Eigen::VectorXd &b() const { return b_; }
        const Eigen::VectorXd &mu_tilde() const { return mu_tilde_; }
        double anchor() const { return anchor_; }   // b^T mu_tilde
        std::size_t dimension() const { return static_cast<std::size_t>(pair_weights_.rows()); }

        // Symmetric M x M matrix with zero diagonal and W_ij = b_(i,j) / 2, so that
        // b^T phi(z) = z^T W z.
        const Eigen::MatrixXd &pair_weights() const { return pair_weights_; }

        // Per-snapshot LLR on raw signs (entries +-1), without input validation.
        double evaluate(const Eigen::Ref<const Eigen::VectorXd> &signs) const
        {
            return signs.dot(pair_weights_ * signs) - anchor_;
        }

    private:
        Eigen::VectorXd b_, mu_tilde_;
        Eigen::MatrixXd pair_weights_;
        double anchor_ = 0.0;
    };

    // phi(z): entry for pair (i, j) is z_i z_j.
    Eigen::VectorXd statistics(const BinarySnapshot &z, const PairIndexMap &map);

    // Elementwise (2/pi) arcsin; rejects entries outside [-1, 1].
    Eigen::MatrixXd arcsine_correlation(const Eigen::MatrixXd &sigma);
    Eigen::MatrixXd arcsine_correlation(const CorrelationMatrix &sigma);

    // Off-diagonal entries of the arcsine correlation of normalize(R_y(gamma)).
    Eigen::VectorXd mu_phi(const SteeringMatrix &steering, double gamma);

    // Covariance of phi(z) under R_y(gamma).
    Eigen::MatrixXd r_phi(const SteeringMatrix &steering, double gamma);

    // Mean and covariance in one pass (the covariance needs the mean anyway).
    StatisticsMoments statistics_moments(const SteeringMatrix &steering, double gamma);

    // Moments for an arbitrary correlation matrix of the analog snapshot.
    StatisticsMoments statistics_moments(const CorrelationMatrix &sigma);

    // R1^{-1} m1 - R0^{-1} m0 via Cholesky solves. A ridge of 1e-10 trace / L is added
    // (with a warning on stderr) if a factorization fails; throws std::runtime_error
    // if it still fails.
    Eigen::VectorXd natural_difference(const Eigen::VectorXd &m0, const Eigen::MatrixXd &c0,
                                       const Eigen::VectorXd &m1, const Eigen::MatrixXd &c1);

    // Everything the one-bit detector needs for one scenario.
    struct ReplacementModel
    {
        PairIndexMap map;
        StatisticsMoments h0, h1;
        Eigen::VectorXd mu_tilde;
        TestStatisticWeights weights;

        // E[l~(z)] under gamma0 and gamma1.
        double expected_increment_h0() const { return weights.b().dot(h0.mu - mu_tilde); }
        double expected_increment_h1() const { return weights.b().dot(h1.mu - mu_tilde); }
    };

    // Midpoint amplitude for mu_tilde, arithmetic mean of the linear amplitudes.
    inline double midpoint_amplitude(double gamma0, double gamma1) { return 0.5 * (gamma0 + gamma1); }

    // Moments at gamma0 and gamma1 are taken from the cache when one is given and filled in otherwise.
    ReplacementModel build_replacement_model(const ScenarioConfig &scenario, const MomentCache *cache = nullptr);

    TestStatisticWeights build_weights(const ScenarioConfig &scenario, const MomentCache *cache = nullptr);

    // b^T (phi(z) - mu_tilde)
    double approx_llr(const BinarySnapshot &z, const TestStatisticWeights &w, const PairIndexMap &map);

    // Sum over the columns of signs (M x n, entries +-1): n b^T (mean phi - mu_tilde).
    double approx_llr_batch(const Eigen::MatrixXd &signs, const TestStatisticWeights &w, const PairIndexMap &map);

    // b^T (mu_phi(gamma) - mu_tilde)
    double expected_approx_llr(double gamma, const TestStatisticWeights &w, const SteeringMatrix &steering);
}

#endif
