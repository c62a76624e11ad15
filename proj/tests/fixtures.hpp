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

// The two-passage "paris" fixture: rank 1 is 1500 filler tokens, rank 2 mentions
// Paris at token offset 100 of its own text.

#pragma once

#include <string>
#include <vector>

#include "xqg/core.hpp"

namespace testing {

inline std::string
filler(std::size_t n, const std::string& word = "lorem") {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += (i ? " " : "") + word + std::to_string(i % 10);
    }
    return s;
}

inline std::vector<xqg::Passage>
paris_corpus() {
    return {xqg::Passage("p1", "", filler(1500)),
            xqg::Passage("p2", "", filler(100, "ipsum") + " Paris " + filler(399, "dolor"))};
}

inline std::vector<xqg::EvalQuery>
paris_queries() {
    return {xqg::EvalQuery("q1", xqg::LanguageSet::defaults().parse("Ja"), "フランスの首都は?", {"paris"})};
}

inline std::vector<xqg::RankedList>
paris_run() {
    return {xqg::RankedList("q1", {{"p1", 0.9}, {"p2", 0.8}})};
}

}  // namespace testing
