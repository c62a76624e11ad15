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

// UTF-8 helpers. Whitespace means the Unicode White_Space property throughout.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace xqg::text {

/// Tokens are views into `utf8`; no empty tokens are produced.
std::vector<std::string_view>
split_whitespace(std::string_view utf8);

bool
is_blank(std::string_view utf8);

/// Full Unicode lower-casing (root locale).
std::string
to_lower(std::string_view utf8);

/// NFKC, lower-case, whitespace runs collapsed to one ASCII space, ends trimmed.
std::string
normalize_for_match(std::string_view utf8);

bool
is_valid_utf8(std::string_view bytes);

}  // namespace xqg::text
