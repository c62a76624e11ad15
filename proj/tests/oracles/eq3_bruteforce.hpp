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

// Brute-force passage augmentation in long double, component by component.

#pragma once

#include <cstddef>
#include <vector>

namespace oracle {

inline std::vector<long double>
augment_bruteforce(const std::vector<float>& passage, const std::vector<std::vector<float>>& queries,
                   long double alpha) {
    std::vector<long double> out(passage.size());
    for (std::size_t i = 0; i < passage.size(); ++i) {
        long double sum = 0.0L;
        for (const auto& q : queries) {
            sum += q[i];
        }
        out[i] = (1.0L - alpha) * passage[i] + alpha * sum;
    }
    return out;
}

}  // namespace oracle
