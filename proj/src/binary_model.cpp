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

#include "onebit/binary_model.hpp"

#include "onebit/moment_cache.hpp"
#include "onebit/orthant.hpp"
#include "onebit/parallel.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace onebit
{
    PairIndexMap::PairIndexMap(std::size_t dimension) : dimension_(dimension)
    {
        if (dimension < 2)
            throw std::invalid_argument("PairIndexMap: at least two dimensions are required");
        const int m = static_cast<int>(dimension);
        pairs_.reserve(dimension * (dimension - 1) / 2);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                pairs_.emplace_back(i, j);
    }

    std::size_t PairIndexMap::index(int i, int j) const
    {
        if (i > j)
            std::swap(i, j);
        const auto m = static_cast<std::size_t>(dimension_);
        if (i < 0 || i == j || static_cast<std::size_t>(j) >= m)
            throw std::out_of_range("PairIndexMap: invalid index pair");
        const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
        // rows 0..a-1 contribute (m-1) + (m-2) + ... + (m-a) entries
        return a * (2 * m - a - 1) / 2 + (b - a - 1);
    }

    TestStatisticWeights::TestStatisticWeights(Eigen::VectorXd b, Eigen::VectorXd mu_tilde, const PairIndexMap &map)
        : b_(std::move(b)), mu_tilde_(std::move(mu_tilde))
    {
        const auto L = static_cast<Eigen::Index>(map.size());
        if (b_.size() != L || mu_tilde_.size() != L)
            throw std::invalid_argument("TestStatisticWeights: vector length does not match the pair map");
        if (!b_.allFinite() || !mu_tilde_.allFinite())
            throw std::invalid_argument("TestStatisticWeights: weights must be finite");

        const auto M = static_cast<Eigen::Index>(map.dimension());
        pair_weights_ = Eigen::MatrixXd::Zero(M, M);
        for (Eigen::Index k = 0; k < L; ++k)
        {
            const auto [i, j] = map[static_cast<std::size_t>(k)];
            pair_weights_(i, j) = 0.5 * b_[k];
            pair_weights_(j, i) = 0.5 * b_[k];
        }
        anchor_ = b_.dot(mu_tilde_);
    }

    Eigen::VectorXd statistics(const BinarySnapshot &z, const PairIndexMap &map)
    {
        if (z.dimension() != map.dimension())
            throw std::invalid_argument("statistics: snapshot dimension does not match the pair map");
        Eigen::VectorXd phi(static_cast<Eigen::Index>(map.size()));
        for (std::size_t k = 0; k < map.size(); ++k)
        {
            const auto [i, j] = map[k];
            phi[static_cast<Eigen::Index>(k)] = z[i] * z[j];
        }
        return phi;
    }

    Eigen::MatrixXd arcsine_correlation(const Eigen::MatrixXd &sigma)
    {
        if (!sigma.allFinite() || sigma.cwiseAbs().maxCoeff() > 1.0)
            throw std::invalid_argument("arcsine_correlation: entries must lie in [-1, 1]");
        return sigma.unaryExpr([](double rho) { return (2.0 / std::numbers::pi) * std::asin(rho); });
    }

    Eigen::MatrixXd arcsine_correlation(const CorrelationMatrix &sigma) { return arcsine_correlation(sigma.matrix()); }

    namespace
    {
        Eigen::VectorXd upper_triangle(const Eigen::MatrixXd &m, const PairIndexMap &map)
        {
            Eigen::VectorXd v(static_cast<Eigen::Index>(map.size()));
            for (std::size_t k = 0; k < map.size(); ++k)
                v[static_cast<Eigen::Index>(k)] = m(map[k].first, map[k].second);
            return v;
        }

        CorrelationMatrix snapshot_correlation(const SteeringMatrix &steering, double gamma)
        {
            return normalize_correlation(build_covariance(steering, gamma));
        }

        // E[z_p z_q z_r z_s] for every p < q < r < s, in lexicographic combination order.
        std::vector<double> quad_moments(const Eigen::MatrixXd &sigma)
        {
            const int m = static_cast<int>(sigma.rows());
            std::vector<std::array<int, 4>> combos;
            for (int p = 0; p < m; ++p)
                for (int q = p + 1; q < m; ++q)
                    for (int r = q + 1; r < m; ++r)
                        for (int s = r + 1; s < m; ++s)
                            combos.push_back({p, q, r, s});

            std::vector<double> moments(combos.size());
            parallel_for(combos.size(), [&](std::size_t n)
                         {
                const auto &c = combos[n];
                Eigen::Matrix4d block;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        block(a, b) = sigma(c[a], c[b]);
                moments[n] = detail::quad_moment_unchecked(block); });
            return moments;
        }
    }

    StatisticsMoments statistics_moments(const CorrelationMatrix &sigma_y)
    {
        const Eigen::MatrixXd &sigma = sigma_y.matrix();
        const PairIndexMap map(sigma_y.dimension());
        const Eigen::MatrixXd rz = arcsine_correlation(sigma);
        const Eigen::VectorXd mu = upper_triangle(rz, map);
        const auto L = static_cast<Eigen::Index>(map.size());
        const int m = static_cast<int>(sigma.rows());

        // E[phi phi^T]; every entry is filled exactly once below
        Eigen::MatrixXd second(L, L);

        // identical pairs: z^2 = 1
        second.diagonal().setOnes();

        // one shared index: E[z_a z_b z_a z_d] = E[z_b z_d]
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int d = b + 1; d < m; ++d)
                {
                    if (b == a || d == a)
                        continue;
                    const auto x = static_cast<Eigen::Index>(map.index(a, b));
                    const auto y = static_cast<Eigen::Index>(map.index(a, d));
                    second(x, y) = rz(b, d);
                    second(y, x) = rz(b, d);
                }

        // four distinct indices: one quadrature per combination, three pairings each
        const std::vector<double> e4 = quad_moments(sigma);
        std::size_t n = 0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q)
                for (int r = q + 1; r < m; ++r)
                    for (int s = r + 1; s < m; ++s, ++n)
                    {
                        const double v = e4[n];
                        const std::array<std::array<int, 4>, 3> pairings = {{{p, q, r, s}, {p, r, q, s}, {p, s, q, r}}};
                        for (const auto &c : pairings)
                        {
                            const auto x = static_cast<Eigen::Index>(map.index(c[0], c[1]));
                            const auto y = static_cast<Eigen::Index>(map.index(c[2], c[3]));
                            second(x, y) = v;
                            second(y, x) = v;
                        }
                    }

        Eigen::MatrixXd cov = second - mu * mu.transpose();
        cov = 0.5 * (cov + cov.transpose()).eval();
        return {mu, std::move(cov)};
    }

    StatisticsMoments statistics_moments(const SteeringMatrix &steering, double gamma)
    {
        return statistics_moments(snapshot_correlation(steering, gamma));
    }

    Eigen::VectorXd mu_phi(const SteeringMatrix &steering, double gamma)
    {
        const PairIndexMap map(steering.dimension());
        return upper_triangle(arcsine_correlation(snapshot_correlation(steering, gamma)), map);
    }

    Eigen::MatrixXd r_phi(const SteeringMatrix &steering, double gamma) { return statistics_moments(steering, gamma).cov; }

    namespace
    {
        Eigen::VectorXd solve_spd(const Eigen::MatrixXd &c, const Eigen::VectorXd &rhs, const char *which)
        {
            Eigen::LLT<Eigen::MatrixXd> llt(c);
            if (llt.info() == Eigen::Success)
                return llt.solve(rhs);

            const double ridge = 1e-10 * c.trace() / static_cast<double>(c.rows());
            std::cerr << "warning: natural_difference: covariance " << which
                      << " is not positive definite, adding ridge " << ridge << '\n';
            Eigen::MatrixXd regularized = c;
            regularized.diagonal().array() += ridge;
            llt.compute(regularized);
            if (llt.info() == Eigen::Success)
                return llt.solve(rhs);

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c, Eigen::EigenvaluesOnly);
            std::ostringstream msg;
            msg << "natural_difference: covariance " << which << " is singular after regularization (eigenvalues in ["
                << eig.eigenvalues().minCoeff() << ", " << eig.eigenvalues().maxCoeff() << "], ridge " << ridge << ")";
            throw std::runtime_error(msg.str());
        }
    }

    Eigen::VectorXd natural_difference(const Eigen::VectorXd &m0, const Eigen::MatrixXd &c0,
                                       const Eigen::VectorXd &m1, const Eigen::MatrixXd &c1)
    {
        const auto L = m0.size();
        if (m1.size() != L || c0.rows() != L || c0.cols() != L || c1.rows() != L || c1.cols() != L)
            throw std::invalid_argument("natural_difference: inconsistent dimensions");
        if (!m0.allFinite() || !m1.allFinite() || !c0.allFinite() || !c1.allFinite())
            throw std::invalid_argument("natural_difference: non-finite input");
        return solve_spd(c1, m1, "under H1") - solve_spd(c0, m0, "under H0");
    }

    ReplacementModel build_replacement_model(const ScenarioConfig &scenario, const MomentCache *cache)
    {
        scenario.validate();
        PairIndexMap map(scenario.dimension());
        auto h0 = moments_for(scenario.sensors, scenario.zeta, scenario.gamma0, cache);
        auto h1 = (scenario.gamma1 == scenario.gamma0) ? h0
                                                       : moments_for(scenario.sensors, scenario.zeta, scenario.gamma1, cache);
        const auto steering = build_steering(scenario.sensors, scenario.zeta);
        Eigen::VectorXd mu_tilde = mu_phi(steering, midpoint_amplitude(scenario.gamma0, scenario.gamma1));
        Eigen::VectorXd b = natural_difference(h0.mu, h0.cov, h1.mu, h1.cov);
        TestStatisticWeights weights(std::move(b), mu_tilde, map);
        return ReplacementModel{std::move(map), std::move(h0), std::move(h1), std::move(mu_tilde), std::move(weights)};
    }

    TestStatisticWeights build_weights(const ScenarioConfig &scenario, const MomentCache *cache)
    {
        return build_replacement_model(scenario, cache).weights;
    }

    double approx_llr(const BinarySnapshot &z, const TestStatisticWeights &w, const PairIndexMap &map)
    {
        if (z.dimension() != map.dimension() || w.dimension() != map.dimension())
            throw std::invalid_argument("approx_llr: dimension mismatch");
        return w.b().dot(statistics(z, map) - w.mu_tilde());
    }

    double approx_llr_batch(const Eigen::MatrixXd &signs, const TestStatisticWeights &w, const PairIndexMap &map)
    {
        if (static_cast<std::size_t>(signs.rows()) != map.dimension() || w.dimension() != map.dimension())
            throw std::invalid_argument("approx_llr_batch: dimension mismatch");
        const auto n = signs.cols();
        if (n == 0)
            return 0.0;
        Eigen::VectorXd phi_mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(map.size()));
        for (Eigen::Index c = 0; c < n; ++c)
            phi_mean += statistics(BinarySnapshot::from_signs(signs.col(c)), map);
        phi_mean /= static_cast<double>(n);
        return static_cast<double>(n) * w.b().dot(phi_mean - w.mu_tilde());
    }

    double expected_approx_llr(double gamma, const TestStatisticWeights &w, const SteeringMatrix &steering)
    {
        if (w.dimension() != steering.dimension())
            throw std::invalid_argument("expected_approx_llr: dimension mismatch");
        return w.b().dot(mu_phi(steering, gamma) - w.mu_tilde());
    }
}
