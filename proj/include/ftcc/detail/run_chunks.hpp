// Copyright 2026 The ftcc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace ftcc {

template <typename Result, typename Job>
std::vector<Result> run_chunks(std::size_t first, std::size_t count, int workers, Job job) {
    std::vector<Result> out(count);
    const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = job(first + i);
        return out;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = cursor++; i < count; i = cursor++) out[i] = job(first + i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) th.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace ftcc
