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

#ifndef DEISM_PARALLEL_HPP
#define DEISM_PARALLEL_HPP

// Chunked execution with a fixed reduction order. Work items are split into contiguous chunks;
// each chunk is processed by exactly one worker and writes only its own output slot, so the
// caller can reduce chunk results in ascending chunk index and get the same bits for any
// worker count.

#include <cstddef>
#include <functional>

namespace deism
{
    struct ExecutionOptions
    {
        unsigned workers = 1;         // 0 selects hardware parallelism
        std::size_t chunk_size = 256; // work items per chunk
    };

    // 0 maps to std::thread::hardware_concurrency() (at least 1).
    unsigned resolve_workers(unsigned requested) noexcept;

    std::size_t chunk_count(std::size_t items, std::size_t chunk_size) noexcept;

    // Calls task(chunk, begin, end) once for every chunk. Rethrows the first exception raised by
    // a task after all workers have stopped.
    void run_chunks(std::size_t items, const ExecutionOptions &options,
                    const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)> &task);
}

#endif
