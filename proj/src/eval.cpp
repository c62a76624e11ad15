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

#include "xqg/eval.hpp"

#include <algorithm>
#include <map>

#include "xqg/parallel.hpp"
#include "xqg/text.hpp"

namespace xqg::eval {

namespace {

std::vector<std::string_view>
tokenize(const Tokenizer& tokenizer, std::string_view s) {
    return tokenizer ? tokenizer(s) : text::split_whitespace(s);
}

std::string
normalize(const Normalizer& normalizer, std::string_view s) {
    return normalizer ? normalizer(s) : text::normalize_for_match(s);
}

}  // namespace

const LanguageRecall*
MetricReport::find(const LanguageTag& lang) const {
    for (const auto& l : per_language) {
        if (l.lang == lang) {
            return &l;
        }
    }
    return nullptr;
}

std::string
metric_name(std::size_t m_tokens) {
    if (m_tokens % 1000 == 0) {
        return "R@" + std::to_string(m_tokens / 1000) + "kt";
    }
    return "R@" + std::to_string(m_tokens) + "t";
}

PassageLookup::PassageLookup(std::span<const Passage> corpus, const Tokenizer& tokenizer) {
    entries_.reserve(corpus.size());
    for (const auto& p : corpus) {
        auto [it, inserted] = entries_.try_emplace(p.id());
        if (!inserted) {
            throw ValidationError("id", "duplicate passage id '" + p.id() + "'");
        }
        it->second.text = p.text();
        it->second.tokens = tokenize(tokenizer, it->second.text);
    }
}

const std::vector<std::string_view>&
PassageLookup::tokens(std::string_view passage_id) const {
    auto it = entries_.find(passage_id);
    if (it == entries_.end()) {
        throw NotFoundError("passage", std::string(passage_id));
    }
    return it->second.tokens;
}

int
query_success(const RankedList& ranking, const PassageLookup& passages, const EvalQuery& query, std::size_t m_tokens,
              const EvalOptions& options) {
    std::string window;
    std::size_t budget = m_tokens;
    for (const auto& entry : ranking.entries()) {
        if (budget == 0) {
            break;
        }
        const auto& tokens = passages.tokens(entry.passage_id);
        const std::size_t take = std::min(budget, tokens.size());
        for (std::size_t i = 0; i < take; ++i) {
            if (!window.empty()) {
                window.push_back(' ');
            }
            window.append(tokens[i]);
        }
        budget -= take;
    }
    if (window.empty()) {
        return 0;
    }
    const std::string haystack = normalize(options.normalizer, window);
    for (const auto& answer : query.answers()) {
        const std::string needle = normalize(options.normalizer, answer);
        if (!needle.empty() && haystack.find(needle) != std::string::npos) {
            return 1;
        }
    }
    return 0;
}

MetricReport
recall_at_kilotokens(std::span<const RankedList> run, const PassageLookup& passages,
                     std::span<const EvalQuery> queries, std::size_t m_tokens, const EvalOptions& options) {
    if (m_tokens == 0) {
        throw ValidationError("m_tokens", "must be positive");
    }
    std::unordered_map<std::string_view, std::size_t> query_row;
    query_row.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (!query_row.emplace(queries[i].qid(), i).second) {
            throw ValidationError("qid", "duplicate query id '" + queries[i].qid() + "'");
        }
    }
    std::vector<const RankedList*> ranking_of(queries.size(), nullptr);
    for (const auto& list : run) {
        auto it = query_row.find(list.qid());
        if (it == query_row.end()) {
            throw NotFoundError("eval query for run qid", list.qid());
        }
        if (ranking_of[it->second] != nullptr) {
            throw ValidationError("qid", "run contains two rankings for '" + list.qid() + "'");
        }
        ranking_of[it->second] = &list;
    }

    std::vector<int> success(queries.size(), 0);
    parallel_for(queries.size(), [&](std::size_t i) {
        if (ranking_of[i] != nullptr) {
            success[i] = query_success(*ranking_of[i], passages, queries[i], m_tokens, options);
        }
    });

    const LanguageSet& languages = options.languages != nullptr ? *options.languages : LanguageSet::defaults();
    std::map<std::size_t, LanguageRecall> by_lang;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto& lang = queries[i].lang();
        auto [it, _] = by_lang.try_emplace(languages.index_of(lang), LanguageRecall{lang, 0.0, {}});
        it->second.successes.push_back({queries[i].qid(), success[i]});
    }

    MetricReport report;
    report.metric = metric_name(m_tokens);
    report.m_tokens = m_tokens;
    double sum = 0.0;
    for (auto& [_, lr] : by_lang) {
        double hits = 0.0;
        for (const auto& s : lr.successes) {
            hits += s.success;
        }
        lr.recall = hits / static_cast<double>(lr.successes.size());
        sum += lr.recall;
        report.per_language.push_back(std::move(lr));
    }
    report.average = report.per_language.empty() ? 0.0 : sum / static_cast<double>(report.per_language.size());
    return report;
}

MetricReport
recall_at_kilotokens(std::span<const RankedList> run, std::span<const Passage> corpus,
                     std::span<const EvalQuery> queries, std::size_t m_tokens, const EvalOptions& options) {
    const PassageLookup lookup(corpus, options.tokenizer);
    return recall_at_kilotokens(run, lookup, queries, m_tokens, options);
}

}  // namespace xqg::eval
