// SPDX-License-Identifier: Apache-2.0
//
// deism: room transfer functions between directional transducers
// Copyright (C) 2026 The deism authors
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

#include "deism/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace deism
{
    unsigned resolve_workers(unsigned requested) noexcept
    {
        if (requested > 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    std::size_t chunk_count(std::size_t items, std::size_t chunk_size) noexcept
    {
        const std::size_t size = std::max<std::size_t>(1, chunk_size);
        return (items + size - 1) / size;
    }

    void run_chunks(std::size_t items, const ExecutionOptions &options,
                    const std::function<void(std::size_t, std::size_t, std::size_t)> &task)
    {
        const std::size_t size = std::max<std::size_t>(1, options.chunk_size);
        const std::size_t chunks = chunk_count(items, size);
        const auto run_one = [&](std::size_t c) { task(c, c * size, std::min(items, (c + 1) * size)); };

        const std::size_t workers = std::min<std::size_t>(resolve_workers(options.workers), chunks);
        if (workers <= 1)
        {
            for (std::size_t c = 0; c < chunks; ++c)
                run_one(c);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        const auto worker = [&]
        {
            for (std::size_t c = next++; c < chunks && !failed; c = next++)
            {
                try
                {
                    run_one(c);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    failed = true;
                }
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }
}
