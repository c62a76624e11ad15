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

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace xqg {

/// Process-wide cap on worker threads. Defaults to the number of logical cores.
std::size_t
thread_count();

/// 0 restores the default.
void
set_thread_count(std::size_t n);

/// Calls body(i) for every i in [0, n), split into contiguous chunks across at most
/// thread_count() workers. Callers write results into pre-sized slots so the output
/// never depends on scheduling. If bodies throw, the exception from the lowest chunk
/// is rethrown.
void
parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace xqg
