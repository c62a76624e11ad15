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

#include "xqg/report.hpp"

#include <algorithm>
#include <cstdio>

namespace xqg::eval {

nlohmann::ordered_json
to_json(const MetricReport& report, bool include_successes) {
    nlohmann::ordered_json j;
    j["metric"] = report.metric;
    j["m_tokens"] = report.m_tokens;
    j["average"] = report.average;
    auto& per = j["per_language"] = nlohmann::ordered_json::object();
    for (const auto& lr : report.per_language) {
        nlohmann::ordered_json l;
        l["recall"] = lr.recall;
        l["num_queries"] = lr.successes.size();
        if (include_successes) {
            auto& s = l["successes"] = nlohmann::ordered_json::object();
            for (const auto& qs : lr.successes) {
                s[qs.qid] = qs.success;
            }
        }
        per[lr.lang.code()] = std::move(l);
    }
    return j;
}

nlohmann::ordered_json
to_json(const SignificanceReport& report) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : report.comparisons) {
        nlohmann::ordered_json j;
        j["label"] = c.label;
        j["t_statistic"] = c.t_statistic;
        j["p_raw"] = c.p_raw;
        j["p_corrected"] = c.p_corrected;
        j["significant"] = c.significant;
        arr.push_back(std::move(j));
    }
    return arr;
}

namespace {

std::string
percent(double recall, bool star) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%s", 100.0 * recall, star ? "*" : "");
    return buf;
}

std::string
pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string
format_table(std::span<const TableRow> rows) {
    std::vector<LanguageTag> columns;
    for (const auto& row : rows) {
        for (const auto& lr : row.report->per_language) {
            if (std::find(columns.begin(), columns.end(), lr.lang) == columns.end()) {
                columns.push_back(lr.lang);
            }
        }
    }

    std::size_t model_width = 5;
    for (const auto& row : rows) {
        model_width = std::max(model_width, row.model.size());
    }
    constexpr std::size_t kCell = 8;

    std::string out = pad("Model", model_width) + " |";
    for (const auto& lang : columns) {
        out += " " + pad(lang.code(), kCell);
    }
    out += "| Average\n";
    out += std::string(model_width + 2 + columns.size() * (kCell + 1) + 9, '-') + "\n";

    for (const auto& row : rows) {
        out += pad(row.model, model_width) + " |";
        for (const auto& lang : columns) {
            const LanguageRecall* lr = row.report->find(lang);
            bool star = false;
            if (row.significance != nullptr) {
                const std::string label = row.report->metric + "/" + lang.code();
                for (const auto& c : row.significance->comparisons) {
                    star = star || (c.label == label && c.significant);
                }
            }
            out += " " + pad(lr != nullptr ? percent(lr->recall, star) : "-", kCell);
        }
        out += "| " + percent(row.report->average, false) + "\n";
    }
    return out;
}

}  // namespace xqg::eval
