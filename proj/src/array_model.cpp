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

#include "onebit/array_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace onebit
{
    double amplitude_from_db(double db) { return std::pow(10.0, db / 20.0); }

    double amplitude_to_db(double gamma) { return 20.0 * std::log10(gamma); }

    double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

    void ScenarioConfig::validate() const
    {
        if (sensors == 0)
            throw std::invalid_argument("ScenarioConfig: sensor count must be at least 1");
        if (!(gamma0 >= 0.0) || !std::isfinite(gamma1))
            throw std::invalid_argument("ScenarioConfig: amplitudes must be finite and gamma0 >= 0");
        if (gamma1 < gamma0)
            throw std::invalid_argument("ScenarioConfig: gamma1 must not be smaller than gamma0");
        if (!(alpha1 > 0.0 && alpha1 < 1.0) || !(alpha2 > 0.0 && alpha2 < 1.0))
            throw std::invalid_argument("ScenarioConfig: error levels must lie in (0, 1)");
        if (alpha1 + alpha2 >= 1.0)
            throw std::invalid_argument("ScenarioConfig: alpha1 + alpha2 must be below 1");
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw std::invalid_argument("ScenarioConfig: bandwidth must be positive");
        if (!std::isfinite(zeta))
            throw std::invalid_argument("ScenarioConfig: arrival angle must be finite");
    }

    ScenarioConfig ScenarioConfig::reference(std::size_t sensors, double alpha)
    {
        ScenarioConfig cfg;
        cfg.sensors = sensors;
        cfg.zeta = degrees_to_radians(15.0);
        cfg.gamma0 = amplitude_from_db(-24.0);
        cfg.gamma1 = amplitude_from_db(-18.0);
        cfg.alpha1 = alpha;
        cfg.alpha2 = alpha;
        cfg.bandwidth_hz = 2.046e6;
        return cfg;
    }

    CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries))
    {
        if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
            throw std::invalid_argument("CovarianceMatrix: matrix must be square and non-empty");
        const double scale = entries_.cwiseAbs().maxCoeff();
        if (!entries_.allFinite() || (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw std::invalid_argument("CovarianceMatrix: matrix must be finite and symmetric");
        if (entries_.diagonal().minCoeff() <= 0.0)
            throw std::invalid_argument("CovarianceMatrix: diagonal entries must be strictly positive");
    }

    CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries))
    {
        if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
            throw std::invalid_argument("CorrelationMatrix: matrix must be square and non-empty");
        if (!entries_.allFinite() || (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("CorrelationMatrix: matrix must be finite and symmetric");
        if ((entries_.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12)
            throw std::invalid_argument("CorrelationMatrix: diagonal must be one");
        if (entries_.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
            throw std::invalid_argument("CorrelationMatrix: entries must lie in [-1, 1]");
        entries_.diagonal().setOnes();
        entries_ = entries_.cwiseMax(-1.0).cwiseMin(1.0);
    }

    BinarySnapshot BinarySnapshot::from_signs(Eigen::VectorXd signs)
    {
        for (Eigen::Index i = 0; i < signs.size(); ++i)
            if (signs[i] != 1.0 && signs[i] != -1.0)
                throw std::invalid_argument("BinarySnapshot: entry " + std::to_string(i) + " is not +-1");
        return BinarySnapshot(std::move(signs));
    }

    SteeringMatrix build_steering(std::size_t sensors, double zeta)
    {
        if (sensors == 0)
            throw std::invalid_argument("build_steering: sensor count must be at least 1");

        const auto S = static_cast<Eigen::Index>(sensors);
        const double phase_step = std::numbers::pi * std::sin(zeta);
        Eigen::MatrixXd a(2 * S, 2);
        for (Eigen::Index k = 0; k < S; ++k)
        {
            const double phase = static_cast<double>(k) * phase_step;
            const double c = std::cos(phase), s = std::sin(phase);
            a(k, 0) = c;
            a(k, 1) = s;
            a(S + k, 0) = -s;
            a(S + k, 1) = c;
        }
        return SteeringMatrix(std::move(a));
    }

    CovarianceMatrix build_covariance(const SteeringMatrix &steering, double gamma)
    {
        if (!(gamma >= 0.0) || !std::isfinite(gamma))
            throw std::invalid_argument("build_covariance: amplitude must be finite and non-negative");
        const Eigen::MatrixXd &a = steering.matrix();
        Eigen::MatrixXd r = (gamma * gamma) * (a * a.transpose());
        r.diagonal().array() += 1.0;
        // exact symmetry, the product can differ in the last bit
        r = 0.5 * (r + r.transpose()).eval();
        return CovarianceMatrix(std::move(r));
    }

    CorrelationMatrix normalize_correlation(const CovarianceMatrix &cov)
    {
        const Eigen::MatrixXd &r = cov.matrix();
        const Eigen::VectorXd inv_sd = r.diagonal().cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd sigma = inv_sd.asDiagonal() * r * inv_sd.asDiagonal();
        sigma.diagonal().setOnes();
        sigma = 0.5 * (sigma + sigma.transpose()).eval();
        return CorrelationMatrix(std::move(sigma));
    }

    BinarySnapshot quantize_sign(const Eigen::Ref<const Eigen::VectorXd> &y)
    {
        Eigen::VectorXd z(y.size());
        for (Eigen::Index i = 0; i < y.size(); ++i)
            z[i] = (y[i] >= 0.0) ? 1.0 : -1.0;
        return BinarySnapshot(std::move(z));
    }

    Snapshot sample_snapshot(const Eigen::MatrixXd &factor, Rng &rng)
    {
        std::normal_distribution<double> normal;
        Eigen::VectorXd w(factor.cols());
        for (auto &v : w)
            v = normal(rng);
        return factor.triangularView<Eigen::Lower>() * w;
    }

    SnapshotSampler::SnapshotSampler(const CovarianceMatrix &cov)
    {
        Eigen::LLT<Eigen::MatrixXd> llt(cov.matrix());
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("SnapshotSampler: covariance is not positive definite");
        factor_ = llt.matrixL();
    }

    void SnapshotSampler::draw(Rng &rng, Eigen::VectorXd &white, Eigen::VectorXd &out) const
    {
        std::normal_distribution<double> normal;
        white.resize(factor_.cols());
        for (auto &v : white)
            v = normal(rng);
        out.noalias() = factor_.triangularView<Eigen::Lower>() * white;
    }

    Snapshot SnapshotSampler::draw(Rng &rng) const
    {
        Eigen::VectorXd white, out;
        draw(rng, white, out);
        return out;
    }
}
