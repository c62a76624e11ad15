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

// Recall at m tokens for ASCII fixtures: concatenate, split on spaces, keep m
// tokens, lower-case, substring match.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace oracle {

inline std::string
ascii_lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return s;
}

inline int
success_at(const std::vector<std::string>& ranked_texts, const std::vector<std::string>& answers, std::size_t m) {
    std::vector<std::string> tokens;
    for (const auto& text : ranked_texts) {
        std::string tok;
        for (char c : text + " ") {
            if (c == ' ') {
                if (!tok.empty()) {
                    tokens.push_back(tok);
                }
                tok.clear();
            } else {
                tok.push_back(c);
            }
        }
    }
    std::string joined;
    for (std::size_t i = 0; i < tokens.size() && i < m; ++i) {
        joined += (i ? " " : "") + tokens[i];
    }
    joined = ascii_lower(joined);
    for (const auto& a : answers) {
        if (joined.find(ascii_lower(a)) != std::string::npos) {
            return 1;
        }
    }
    return 0;
}

}  // namespace oracle
