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

#include "onebit/ideal_receiver.hpp"

#include <stdexcept>

namespace onebit
{
    namespace
    {
        struct Factored
        {
            Eigen::MatrixXd inverse;
            double logdet;
        };

        Factored factor_spd(const Eigen::MatrixXd &r)
        {
            Eigen::LLT<Eigen::MatrixXd> llt(r);
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("GaussianPair: covariance is not positive definite");
            const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(r.rows(), r.cols());
            Eigen::MatrixXd inv = llt.solve(identity);
            inv = 0.5 * (inv + inv.transpose()).eval();
            const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
            return {std::move(inv), logdet};
        }
    }

    GaussianPair::GaussianPair(const CovarianceMatrix &r0, const CovarianceMatrix &r1)
        : r0_(r0.matrix()), r1_(r1.matrix())
    {
        if (r0_.rows() != r1_.rows())
            throw std::invalid_argument("GaussianPair: hypotheses have different dimensions");
        auto f0 = factor_spd(r0_);
        auto f1 = factor_spd(r1_);
        inv0_ = std::move(f0.inverse);
        inv1_ = std::move(f1.inverse);
        logdet0_ = f0.logdet;
        logdet1_ = f1.logdet;
        half_difference_ = 0.5 * (inv0_ - inv1_);
    }

    double GaussianPair::llr(const Eigen::Ref<const Eigen::VectorXd> &y) const
    {
        if (y.size() != r0_.rows())
            throw std::invalid_argument("exact_llr: snapshot dimension does not match the model");
        return y.dot(half_difference_ * y) + 0.5 * (logdet0_ - logdet1_);
    }

    double GaussianPair::expected_llr(const Eigen::Ref<const Eigen::MatrixXd> &r_data) const
    {
        if (r_data.rows() != r0_.rows() || r_data.cols() != r0_.cols())
            throw std::invalid_argument("expected_exact_llr: covariance dimension does not match the model");
        // trace(A B) for symmetric A as the elementwise product sum
        return half_difference_.cwiseProduct(r_data).sum() + 0.5 * (logdet0_ - logdet1_);
    }

    GaussianPair make_gaussian_pair(const ScenarioConfig &scenario)
    {
        scenario.validate();
        const auto steering = build_steering(scenario.sensors, scenario.zeta);
        return GaussianPair(build_covariance(steering, scenario.gamma0), build_covariance(steering, scenario.gamma1));
    }

    double exact_llr(const Eigen::Ref<const Eigen::VectorXd> &y, const GaussianPair &pair) { return pair.llr(y); }

    double expected_exact_llr(const CovarianceMatrix &r_data, const GaussianPair &pair)
    {
        return pair.expected_llr(r_data.matrix());
    }
}
