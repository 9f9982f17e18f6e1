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

#ifndef ONEBIT_ARRAY_MODEL_HPP
#define ONEBIT_ARRAY_MODEL_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <random>

namespace onebit
{
    // Amplitude conversion: the dB value is a power ratio, so gamma^2 = 10^(dB/10).
    double amplitude_from_db(double db);
    double amplitude_to_db(double gamma);
    double degrees_to_radians(double deg);

    // Complete description of one detection scenario. Amplitudes are linear.
    struct ScenarioConfig
    {
        std::size_t sensors = 16;        // S, number of ULA elements
        double zeta = 0.0;               // Arrival angle in [rad]
        double gamma0 = 0.0;             // Source amplitude under H0
        double gamma1 = 0.0;             // Source amplitude under H1
        double alpha1 = 1e-3;            // Bound on P(decide H0 | H1)
        double alpha2 = 1e-3;            // Bound on P(decide H1 | H0)
        double bandwidth_hz = 2.046e6;   // Two-sided bandwidth B, sampling rate f_s = B
        std::uint64_t seed = 1;          // Master RNG seed
        std::size_t max_steps = 0;       // Hard cap on the test length, 0 = derive from the analytic ASN

        std::size_t dimension() const { return 2 * sensors; }
        double sample_period() const { return 1.0 / bandwidth_hz; }

        // Throws std::invalid_argument on a violated invariant.
        // gamma1 == gamma0 is accepted (degenerate, undecidable scenario).
        void validate() const;

        // GNSS monitoring scenario: zeta = 15 deg, -24/-18 dB, B = 2.046 MHz.
        static ScenarioConfig reference(std::size_t sensors, double alpha);
    };

    // M x 2 array response [A_I; A_Q] of a half-wavelength ULA.
    class SteeringMatrix
    {
    public:
        const Eigen::MatrixXd &matrix() const { return entries_; }
        std::size_t sensors() const { return static_cast<std::size_t>(entries_.rows() / 2); }
        std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }

    private:
        friend SteeringMatrix build_steering(std::size_t sensors, double zeta);
        explicit SteeringMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}
        Eigen::MatrixXd entries_;
    };

    // Symmetric positive definite snapshot covariance R_y.
    class CovarianceMatrix
    {
    public:
        // Validates symmetry and a strictly positive diagonal.
        explicit CovarianceMatrix(Eigen::MatrixXd entries);

        const Eigen::MatrixXd &matrix() const { return entries_; }
        std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }

    private:
        Eigen::MatrixXd entries_;
    };

    // Unit-diagonal correlation matrix with entries in [-1, 1].
    class CorrelationMatrix
    {
    public:
        explicit CorrelationMatrix(Eigen::MatrixXd entries);

        const Eigen::MatrixXd &matrix() const { return entries_; }
        std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
        double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    private:
        Eigen::MatrixXd entries_;
    };

    using Snapshot = Eigen::VectorXd;

    // Sign-quantized snapshot, every entry exactly -1 or +1.
    class BinarySnapshot
    {
    public:
        BinarySnapshot() = default;

        // Throws std::invalid_argument if any entry is not +-1.
        static BinarySnapshot from_signs(Eigen::VectorXd signs);

        const Eigen::VectorXd &signs() const { return signs_; }
        std::size_t dimension() const { return static_cast<std::size_t>(signs_.size()); }
        double operator[](Eigen::Index i) const { return signs_[i]; }

    private:
        friend BinarySnapshot quantize_sign(const Eigen::Ref<const Eigen::VectorXd> &y);
        explicit BinarySnapshot(Eigen::VectorXd signs) : signs_(std::move(signs)) {}
        Eigen::VectorXd signs_;
    };

    // Row k of A_I is [cos(k pi sin zeta), sin(k pi sin zeta)], A_Q row k is [-sin, cos].
    SteeringMatrix build_steering(std::size_t sensors, double zeta);

    // R_y(gamma) = gamma^2 A A^T + I
    CovarianceMatrix build_covariance(const SteeringMatrix &steering, double gamma);

    // diag(R)^{-1/2} R diag(R)^{-1/2}
    CorrelationMatrix normalize_correlation(const CovarianceMatrix &cov);

    // +1 for y_i >= 0, -1 otherwise.
    BinarySnapshot quantize_sign(const Eigen::Ref<const Eigen::VectorXd> &y);

    using Rng = std::mt19937_64;

    // Per-run stream derived from the master seed.
    inline Rng make_stream(std::uint64_t seed, std::uint64_t run_index) { return Rng(seed + run_index); }

    // y = factor * w, w i.i.d. standard normal.
    Snapshot sample_snapshot(const Eigen::MatrixXd &factor, Rng &rng);

    // Zero-mean Gaussian snapshot generator for a fixed covariance; owns the Cholesky factor.
    class SnapshotSampler
    {
    public:
        // Throws std::runtime_error if the covariance is not positive definite.
        explicit SnapshotSampler(const CovarianceMatrix &cov);

        const Eigen::MatrixXd &factor() const { return factor_; }
        std::size_t dimension() const { return static_cast<std::size_t>(factor_.rows()); }

        // Writes one snapshot into out, reusing the caller's buffers.
        void draw(Rng &rng, Eigen::VectorXd &white, Eigen::VectorXd &out) const;
        Snapshot draw(Rng &rng) const;

    private:
        Eigen::MatrixXd factor_;
    };
}

#endif
