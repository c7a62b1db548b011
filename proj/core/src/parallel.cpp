// SPDX-License-Identifier: Apache-2.0
//
// mimo_as: analytical and Monte Carlo rate evaluation for multi-cell correlated MIMO
// Copyright (C) 2026 The mimo_as authors
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

#include "mimo_as/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mimo_as
{
    std::size_t default_workers()
    {
        if (const char *env = std::getenv("MIMO_AS_WORKERS"))
        {
            try
            {
                const long v = std::stol(env);
                if (v >= 1)
                    return static_cast<std::size_t>(v);
            }
            catch (const std::exception &)
            {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &task)
    {
        if (n == 0)
            return;
        workers = std::clamp<std::size_t>(workers, 1, n);

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::mutex mu;
        std::size_t fail_index = std::numeric_limits<std::size_t>::max();
        std::exception_ptr fail;

        auto run = [&]
        {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load())
                    return;
                try
                {
                    task(i);
                }
                catch (...)
                {
                    std::lock_guard lock(mu);
                    if (i < fail_index)
                        fail_index = i, fail = std::current_exception();
                    failed = true;
                }
            }
        };

        if (workers == 1)
            run();
        else
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers - 1);
            for (std::size_t w = 1; w < workers; ++w)
                pool.emplace_back(run);
            run();
        }
        if (fail)
            std::rethrow_exception(fail);
    }
}
