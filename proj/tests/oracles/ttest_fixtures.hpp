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

// Paired t-test values computed once with scipy.stats.ttest_rel (scipy 1.x,
// double precision) and frozen here.

#pragma once

#include <vector>

namespace oracle {

struct TTestFixture {
    std::vector<double> a;
    std::vector<double> b;
    double t;
    double p;
};

inline const std::vector<TTestFixture>&
ttest_fixtures() {
    static const std::vector<TTestFixture> fixtures = {
        {{1, 0, 1, 1, 0, 1, 1, 1}, {0, 0, 1, 0, 0, 1, 0, 1}, 2.0493901531919194, 0.07960201245519757},
        {{0, 0, 1, 0, 0, 1, 0, 1}, {1, 0, 1, 1, 0, 1, 1, 1}, -2.0493901531919194, 0.07960201245519757},
        {{0.3, 0.5, 0.9, 0.1, 0.7}, {0.2, 0.55, 0.6, 0.15, 0.4}, 1.5301841113520114, 0.20071493028627538},
        {{1, 1}, {0, 0.5}, 3.0, 0.20483276469913345},
    };
    return fixtures;
}

}  // namespace oracle
