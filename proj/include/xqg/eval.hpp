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

// Recall at m kilo-tokens: a query succeeds when one of its answers occurs in the first
// m tokens of its retrieved passages, concatenated in rank order.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xqg/core.hpp"

namespace xqg::eval {

using Tokenizer = std::function<std::vector<std::string_view>(std::string_view)>;
using Normalizer = std::function<std::string(std::string_view)>;

struct EvalOptions {
    /// Unicode-whitespace splitting by default.
    Tokenizer tokenizer;
    /// NFKC + lower-case + whitespace collapse by default.
    Normalizer normalizer;
    /// Column order of per-language results.
    const LanguageSet* languages = &LanguageSet::defaults();
};

struct QuerySuccess {
    std::string qid;
    int success;

    bool
    operator==(const QuerySuccess&) const = default;
};

struct LanguageRecall {
    LanguageTag lang;
    double recall;
    std::vector<QuerySuccess> successes;

    bool
    operator==(const LanguageRecall&) const = default;
};

struct MetricReport {
    std::string metric;
    std::size_t m_tokens = 0;
    /// Languages that have at least one query, in language-set order.
    std::vector<LanguageRecall> per_language;
    /// Unweighted mean of the per-language recalls.
    double average = 0.0;

    const LanguageRecall*
    find(const LanguageTag& lang) const;

    bool
    operator==(const MetricReport&) const = default;
};

/// "R@2kt" for 2000 tokens; budgets that are not whole thousands print as "R@1550t".
std::string
metric_name(std::size_t m_tokens);

/// Passage texts by id, tokenized once.
class PassageLookup {
 public:
    explicit PassageLookup(std::span<const Passage> corpus, const Tokenizer& tokenizer = {});

    PassageLookup(PassageLookup&&) = default;
    PassageLookup&
    operator=(PassageLookup&&) = default;
    PassageLookup(const PassageLookup&) = delete;
    PassageLookup&
    operator=(const PassageLookup&) = delete;

    /// Throws NotFoundError for an unknown id.
    const std::vector<std::string_view>&
    tokens(std::string_view passage_id) const;

 private:
    struct Hash {
        using is_transparent = void;
        std::size_t
        operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };
    // Map nodes never relocate, so the views stay valid.
    struct Entry {
        std::string text;
        std::vector<std::string_view> tokens;
    };
    std::unordered_map<std::string, Entry, Hash, std::equal_to<>> entries_;
};

/// Whether any normalized answer occurs in the first m_tokens tokens of `ranking`.
int
query_success(const RankedList& ranking, const PassageLookup& passages, const EvalQuery& query, std::size_t m_tokens,
              const EvalOptions& options = {});

/// Every qid in `run` must belong to `queries`; queries without a ranking score 0.
MetricReport
recall_at_kilotokens(std::span<const RankedList> run, const PassageLookup& passages,
                     std::span<const EvalQuery> queries, std::size_t m_tokens, const EvalOptions& options = {});

MetricReport
recall_at_kilotokens(std::span<const RankedList> run, std::span<const Passage> corpus,
                     std::span<const EvalQuery> queries, std::size_t m_tokens, const EvalOptions& options = {});

}  // namespace xqg::eval
