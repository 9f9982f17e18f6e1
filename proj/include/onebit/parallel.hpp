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

#ifndef ONEBIT_PARALLEL_HPP
#define ONEBIT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace onebit
{
    // Worker count used by parallel_for; 0 selects std::thread::hardware_concurrency().
    inline std::size_t &parallel_workers()
    {
        static std::size_t workers = 0;
        return workers;
    }

    // Calls fn(i) for i in [0, n). Tasks must write only to their own output slot,
    // so results never depend on the number of workers or the scheduling order.
    // The first exception thrown by a task is rethrown on the calling thread.
    template <typename Fn>
    void parallel_for(std::size_t n, Fn &&fn)
    {
        std::size_t workers = parallel_workers();
        if (workers == 0)
            workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
        workers = std::min(workers, n);

        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]
        {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = n;
                }
            }
        };

        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
        pool.clear();

        if (failure)
            std::rethrow_exception(failure);
    }
}

#endif
