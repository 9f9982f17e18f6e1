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

#include "onebit/moment_cache.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace onebit
{
    namespace
    {
        constexpr std::array<char, 8> magic = {'O', 'B', 'P', 'H', 'I', 'M', 'O', 'M'};
        constexpr std::uint32_t format_version = 1;
        constexpr std::uint32_t byte_order_marker = 0x01020304;

        std::string hex_bits(double x)
        {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(x)));
            return buf;
        }

        template <typename T>
        void put(std::ofstream &out, const T &value)
        {
            out.write(reinterpret_cast<const char *>(&value), sizeof(T));
        }

        template <typename T>
        bool get(std::ifstream &in, T &value)
        {
            return static_cast<bool>(in.read(reinterpret_cast<char *>(&value), sizeof(T)));
        }
    }

    MomentCache::MomentCache(std::filesystem::path directory) : directory_(std::move(directory))
    {
        std::filesystem::create_directories(directory_);
    }

    std::filesystem::path MomentCache::path_for(std::size_t sensors, double zeta, double gamma) const
    {
        return directory_ / ("phi_moments_S" + std::to_string(sensors) + "_z" + hex_bits(zeta) + "_g" +
                             hex_bits(gamma) + ".bin");
    }

    std::optional<StatisticsMoments> MomentCache::load(std::size_t sensors, double zeta, double gamma) const
    {
        std::ifstream in(path_for(sensors, zeta, gamma), std::ios::binary);
        if (!in)
            return std::nullopt;

        std::array<char, 8> file_magic{};
        std::uint32_t version = 0, marker = 0;
        std::uint64_t file_sensors = 0, L = 0;
        double file_zeta = 0.0, file_gamma = 0.0;
        if (!in.read(file_magic.data(), file_magic.size()) || file_magic != magic)
            return std::nullopt;
        if (!get(in, version) || version != format_version || !get(in, marker) || marker != byte_order_marker)
            return std::nullopt;
        if (!get(in, file_sensors) || !get(in, file_zeta) || !get(in, file_gamma) || !get(in, L))
            return std::nullopt;

        const std::uint64_t m = 2 * static_cast<std::uint64_t>(sensors);
        if (file_sensors != sensors || std::bit_cast<std::uint64_t>(file_zeta) != std::bit_cast<std::uint64_t>(zeta) ||
            std::bit_cast<std::uint64_t>(file_gamma) != std::bit_cast<std::uint64_t>(gamma) || L != m * (m - 1) / 2)
            return std::nullopt;

        StatisticsMoments moments;
        const auto n = static_cast<Eigen::Index>(L);
        moments.mu.resize(n);
        moments.cov.resize(n, n);
        if (!in.read(reinterpret_cast<char *>(moments.mu.data()), static_cast<std::streamsize>(sizeof(double) * L)))
            return std::nullopt;
        // Eigen is column-major, the file is row-major
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(n, n);
        if (!in.read(reinterpret_cast<char *>(rows.data()), static_cast<std::streamsize>(sizeof(double) * L * L)))
            return std::nullopt;
        moments.cov = rows;
        return moments;
    }

    void MomentCache::store(std::size_t sensors, double zeta, double gamma, const StatisticsMoments &moments) const
    {
        const std::uint64_t m = 2 * static_cast<std::uint64_t>(sensors);
        const std::uint64_t L = m * (m - 1) / 2;
        if (static_cast<std::uint64_t>(moments.mu.size()) != L || static_cast<std::uint64_t>(moments.cov.rows()) != L ||
            static_cast<std::uint64_t>(moments.cov.cols()) != L)
            throw std::invalid_argument("MomentCache: moments do not match the sensor count");

        const auto target = path_for(sensors, zeta, gamma);
        auto temporary = target;
        temporary += ".tmp";
        {
            std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("MomentCache: cannot write " + temporary.string());
            out.write(magic.data(), magic.size());
            put(out, format_version);
            put(out, byte_order_marker);
            put(out, static_cast<std::uint64_t>(sensors));
            put(out, zeta);
            put(out, gamma);
            put(out, L);
            out.write(reinterpret_cast<const char *>(moments.mu.data()), static_cast<std::streamsize>(sizeof(double) * L));
            const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = moments.cov;
            out.write(reinterpret_cast<const char *>(rows.data()), static_cast<std::streamsize>(sizeof(double) * L * L));
            if (!out)
                throw std::runtime_error("MomentCache: write failed for " + temporary.string());
        }
        std::filesystem::rename(temporary, target);
    }

    StatisticsMoments MomentCache::get_or_compute(std::size_t sensors, double zeta, double gamma) const
    {
        if (auto cached = load(sensors, zeta, gamma))
            return std::move(*cached);
        auto moments = statistics_moments(build_steering(sensors, zeta), gamma);
        store(sensors, zeta, gamma, moments);
        return moments;
    }

    StatisticsMoments moments_for(std::size_t sensors, double zeta, double gamma, const MomentCache *cache)
    {
        if (cache)
            return cache->get_or_compute(sensors, zeta, gamma);
        return statistics_moments(build_steering(sensors, zeta), gamma);
    }
}
