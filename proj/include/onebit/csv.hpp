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

#ifndef ONEBIT_CSV_HPP
#define ONEBIT_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace onebit
{
    // Shortest decimal form that parses back to the same double ("nan", "inf" for non-finite).
    std::string format_double(double x);

    using CsvCell = std::variant<double, std::int64_t, std::string>;

    // Header row plus data rows; comma separated, '\n' line endings.
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<CsvCell>> rows;

        void write(std::ostream &out) const;
        std::string str() const;
        // Throws std::runtime_error if the file cannot be written.
        void save(const std::filesystem::path &path) const;
    };
}

#endif
