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

#include <span>
#include <string>

#include <json.hpp>

#include "xqg/eval.hpp"
#include "xqg/significance.hpp"

namespace xqg::eval {

nlohmann::ordered_json
to_json(const MetricReport& report, bool include_successes = true);

nlohmann::ordered_json
to_json(const SignificanceReport& report);

struct TableRow {
    std::string model;
    const MetricReport* report = nullptr;
    /// Optional; cells whose comparison is significant get a '*'.
    const SignificanceReport* significance = nullptr;
};

/// Languages as columns, models as rows, recall in percent with one decimal.
std::string
format_table(std::span<const TableRow> rows);

}  // namespace xqg::eval
