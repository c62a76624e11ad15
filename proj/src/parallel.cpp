// Copyright (C) 2026 The xqg Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance
// with the License. You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under the License.

#include "xqg/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace xqg {

namespace {

std::atomic<std::size_t> configured_threads{0};

// Nested parallel_for calls run inline on the worker that issued them.
thread_local bool inside_worker = false;

}  // namespace

std::size_t
thread_count() {
    const auto n = configured_threads.load();
    if (n != 0) {
        return n;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void
set_thread_count(std::size_t n) {
    configured_threads.store(n);
}

void
parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) {
        return;
    }
    const std::size_t workers = inside_worker ? 1 : std::min(thread_count(), n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                inside_worker = true;
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(n, begin + chunk);
                try {
                    for (std::size_t i = begin; i < end; ++i) {
                        body(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace xqg
