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

#ifndef ONEBIT_IDEAL_RECEIVER_HPP
#define ONEBIT_IDEAL_RECEIVER_HPP

#include "onebit/array_model.hpp"

namespace onebit
{
    // Two zero-mean Gaussian hypotheses with cached inverses and log-determinants.
    // The exact LLR of the unquantized (infinite resolution) receiver.
    class GaussianPair
    {
    public:
        // Throws std::invalid_argument on dimension mismatch, std::runtime_error if
        // either covariance is not positive definite.
        GaussianPair(const CovarianceMatrix &r0, const CovarianceMatrix &r1);

        const Eigen::MatrixXd &r0() const { return r0_; }
        const Eigen::MatrixXd &r1() const { return r1_; }
        const Eigen::MatrixXd &inv0() const { return inv0_; }
        const Eigen::MatrixXd &inv1() const { return inv1_; }
        double logdet0() const { return logdet0_; }
        double logdet1() const { return logdet1_; }
        std::size_t dimension() const { return static_cast<std::size_t>(r0_.rows()); }

        // 1/2 y^T (inv0 - inv1) y + 1/2 (logdet0 - logdet1)
        double llr(const Eigen::Ref<const Eigen::VectorXd> &y) const;

        // Expectation of llr(y) for y ~ N(0, r_data).
        double expected_llr(const Eigen::Ref<const Eigen::MatrixXd> &r_data) const;

    private:
        Eigen::MatrixXd r0_, r1_, inv0_, inv1_;
        Eigen::MatrixXd half_difference_;   // (inv0 - inv1) / 2
        double logdet0_ = 0.0, logdet1_ = 0.0;
    };

    // Pair for the two hypotheses of a scenario.
    GaussianPair make_gaussian_pair(const ScenarioConfig &scenario);

    double exact_llr(const Eigen::Ref<const Eigen::VectorXd> &y, const GaussianPair &pair);
    double expected_exact_llr(const CovarianceMatrix &r_data, const GaussianPair &pair);
}

#endif
