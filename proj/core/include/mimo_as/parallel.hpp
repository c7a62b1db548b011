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

#ifndef MIMO_AS_PARALLEL_HPP
#define MIMO_AS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mimo_as
{
    // Worker count from MIMO_AS_WORKERS, else hardware concurrency (at least 1).
    std::size_t default_workers();

    // Runs task(i) for i in [0, n) on up to `workers` threads. Tasks must write only to their own
    // slot, which makes results independent of the worker count. The exception of the lowest
    // failing index is rethrown after all workers stop; remaining tasks are skipped once one fails.
    void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &task);
}

#endif
