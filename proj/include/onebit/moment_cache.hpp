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

#ifndef ONEBIT_MOMENT_CACHE_HPP
#define ONEBIT_MOMENT_CACHE_HPP

#include "onebit/binary_model.hpp"

#include <filesystem>
#include <optional>

namespace onebit
{
    /*!
     * Directory of precomputed statistics moments keyed by (S, zeta, gamma).
     *
     * One file per key, named phi_moments_S<S>_z<zeta>_g<gamma>.bin where zeta and
     * gamma are the 16 hex digits of their IEEE-754 bit patterns. Layout, all fields
     * in host byte order:
     *
     *   offset  size     field
     *   0       8        magic "OBPHIMOM"
     *   8       4        uint32 format version (1)
     *   12      4        uint32 byte-order marker 0x01020304
     *   16      8        uint64 sensors S
     *   24      8        float64 zeta [rad]
     *   32      8        float64 gamma (linear amplitude)
     *   40      8        uint64 L = M (M - 1) / 2
     *   48      8 L      float64 mu_phi
     *   48+8L   8 L L    float64 R_phi, row-major
     *
     * Files whose header does not match the requested key are ignored.
     */
    class MomentCache
    {
    public:
        // Creates the directory if needed.
        explicit MomentCache(std::filesystem::path directory);

        const std::filesystem::path &directory() const { return directory_; }

        std::filesystem::path path_for(std::size_t sensors, double zeta, double gamma) const;

        std::optional<StatisticsMoments> load(std::size_t sensors, double zeta, double gamma) const;

        // Throws std::runtime_error on I/O failure.
        void store(std::size_t sensors, double zeta, double gamma, const StatisticsMoments &moments) const;

        StatisticsMoments get_or_compute(std::size_t sensors, double zeta, double gamma) const;

    private:
        std::filesystem::path directory_;
    };

    // Cache lookup when cache is non-null, plain computation otherwise.
    StatisticsMoments moments_for(std::size_t sensors, double zeta, double gamma, const MomentCache *cache);
}

#endif
