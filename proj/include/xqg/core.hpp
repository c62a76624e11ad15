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

// Domain types shared by every module. All of them validate on construction and
// are immutable afterwards, so they can be shared freely across threads.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "xqg/error.hpp"

namespace xqg {

class LanguageSet;

/// A language code such as "Ja". Only obtainable through LanguageSet::parse, so
/// every tag in circulation belongs to some configured set.
class LanguageTag {
 public:
    const std::string&
    code() const noexcept {
        return code_;
    }

    /// "jA" -> "Ja": first character upper-cased, the rest lower-cased (ASCII).
    static std::string
    normalize_code(std::string_view raw);

    auto
    operator<=>(const LanguageTag&) const = default;

 private:
    friend class LanguageSet;
    explicit LanguageTag(std::string code) : code_(std::move(code)) {
    }

    std::string code_;
};

/// Ordered set of admissible language codes. The order is significant: it is the
/// order in which generated queries of different languages are aggregated.
class LanguageSet {
 public:
    explicit LanguageSet(const std::vector<std::string>& codes);

    /// Ar, Bn, Fi, Ja, Ko, Ru, Te, En.
    static const LanguageSet&
    defaults();

    LanguageTag
    parse(std::string_view raw) const;

    /// Comma-separated list; an empty or blank string yields an empty list.
    /// The result is deduplicated and sorted into set order.
    std::vector<LanguageTag>
    parse_list(std::string_view comma_separated) const;

    bool
    contains(std::string_view raw) const;

    std::size_t
    index_of(const LanguageTag& tag) const;

    /// Sorts into set order, dropping duplicates.
    std::vector<LanguageTag>
    ordered(std::vector<LanguageTag> tags) const;

    std::span<const LanguageTag>
    tags() const noexcept {
        return tags_;
    }

 private:
    std::vector<LanguageTag> tags_;
};

class Passage {
 public:
    Passage(std::string id, std::string title, std::string text);

    const std::string&
    id() const noexcept {
        return id_;
    }
    const std::string&
    title() const noexcept {
        return title_;
    }
    const std::string&
    text() const noexcept {
        return text_;
    }

 private:
    std::string id_;
    std::string title_;
    std::string text_;
};

class EvalQuery {
 public:
    EvalQuery(std::string qid, LanguageTag lang, std::string text, std::vector<std::string> answers);

    const std::string&
    qid() const noexcept {
        return qid_;
    }
    const LanguageTag&
    lang() const noexcept {
        return lang_;
    }
    const std::string&
    text() const noexcept {
        return text_;
    }
    const std::vector<std::string>&
    answers() const noexcept {
        return answers_;
    }

 private:
    std::string qid_;
    LanguageTag lang_;
    std::string text_;
    std::vector<std::string> answers_;
};

class GeneratedQuery {
 public:
    GeneratedQuery(std::string passage_id, LanguageTag lang, std::string text, std::uint32_t sample_index);

    const std::string&
    passage_id() const noexcept {
        return passage_id_;
    }
    const LanguageTag&
    lang() const noexcept {
        return lang_;
    }
    const std::string&
    text() const noexcept {
        return text_;
    }
    std::uint32_t
    sample_index() const noexcept {
        return sample_index_;
    }

    /// Id of this query's vector in an embedding store: `genq::<passage_id>::<lang>::<sample_index>`.
    std::string
    embedding_id() const;

 private:
    std::string passage_id_;
    LanguageTag lang_;
    std::string text_;
    std::uint32_t sample_index_;
};

std::string
genq_embedding_id(std::string_view passage_id, const LanguageTag& lang, std::uint32_t sample_index);

/// Per-passage, per-language generated queries, each list sorted by sample_index.
class GeneratedQuerySet {
 public:
    using PerLanguage = std::map<LanguageTag, std::vector<GeneratedQuery>>;

    static constexpr std::uint32_t kDefaultMaxSamples = 1024;

    explicit GeneratedQuerySet(std::uint32_t max_samples = kDefaultMaxSamples) : max_samples_(max_samples) {
    }

    /// Inserts keeping sample_index order; rejects a repeated (passage, lang, sample_index)
    /// and any sample_index >= max_samples().
    void
    add(GeneratedQuery query);

    /// Queries of one (passage, language) in sample_index order; empty when absent.
    std::span<const GeneratedQuery>
    queries(std::string_view passage_id, const LanguageTag& lang) const;

    std::size_t
    available(std::string_view passage_id, const LanguageTag& lang) const {
        return queries(passage_id, lang).size();
    }

    /// Throws NotFoundError for the first passage id absent from `corpus_ids`.
    void
    validate_against(const std::unordered_set<std::string>& corpus_ids) const;

    /// Languages that occur anywhere in the set.
    std::vector<LanguageTag>
    languages() const;

    /// Every query, ordered by passage id, then language code, then sample_index.
    std::vector<const GeneratedQuery*>
    all() const;

    const std::map<std::string, PerLanguage, std::less<>>&
    entries() const noexcept {
        return entries_;
    }

    std::size_t
    size() const noexcept {
        return size_;
    }
    bool
    empty() const noexcept {
        return size_ == 0;
    }
    std::uint32_t
    max_samples() const noexcept {
        return max_samples_;
    }

 private:
    std::uint32_t max_samples_;
    std::size_t size_ = 0;
    std::map<std::string, PerLanguage, std::less<>> entries_;
};

/// Fixed-length vector of finite 32-bit reals.
class Embedding {
 public:
    explicit Embedding(std::vector<float> values);

    static Embedding
    zeros(std::size_t dim);

    std::size_t
    dim() const noexcept {
        return values_.size();
    }
    std::span<const float>
    values() const noexcept {
        return values_;
    }
    float
    operator[](std::size_t i) const noexcept {
        return values_[i];
    }

    bool
    operator==(const Embedding&) const = default;

 private:
    std::vector<float> values_;
};

/// Inner product accumulated in 64-bit.
double
dot(std::span<const float> a, std::span<const float> b);

double
l2_norm(std::span<const float> v);

/// Unit-length copy; the zero vector is returned unchanged.
Embedding
l2_normalized(const Embedding& e);

/// The knobs of the indexing-time augmentation.
class AugmentationConfig {
 public:
    AugmentationConfig(double alpha, std::vector<LanguageTag> languages, std::size_t queries_per_language,
                       bool renormalize = false);

    /// alpha = 0, no languages, n = 0.
    static AugmentationConfig
    none();

    double
    alpha() const noexcept {
        return alpha_;
    }
    /// Languages in aggregation order.
    const std::vector<LanguageTag>&
    languages() const noexcept {
        return languages_;
    }
    std::size_t
    queries_per_language() const noexcept {
        return queries_per_language_;
    }
    bool
    renormalize() const noexcept {
        return renormalize_;
    }

    AugmentationConfig
    with_alpha(double alpha) const;
    AugmentationConfig
    with_languages(std::vector<LanguageTag> languages) const;
    AugmentationConfig
    with_queries_per_language(std::size_t n) const;

 private:
    double alpha_;
    std::vector<LanguageTag> languages_;
    std::size_t queries_per_language_;
    bool renormalize_;
};

struct ScoredPassage {
    std::string passage_id;
    double score;

    bool
    operator==(const ScoredPassage&) const = default;
};

/// Deterministic ranking order: score descending, then passage_id ascending.
inline bool
ranks_before(const ScoredPassage& a, const ScoredPassage& b) {
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.passage_id < b.passage_id;
}

class RankedList {
 public:
    /// Enforces the full ranking order (ties by passage_id) and no duplicates.
    RankedList(std::string qid, std::vector<ScoredPassage> entries);

    /// For lists read back from run files, whose printed scores may tie where the
    /// originals did not: requires only non-increasing scores and no duplicates.
    static RankedList
    in_rank_order(std::string qid, std::vector<ScoredPassage> entries);

    const std::string&
    qid() const noexcept {
        return qid_;
    }
    const std::vector<ScoredPassage>&
    entries() const noexcept {
        return entries_;
    }
    std::size_t
    size() const noexcept {
        return entries_.size();
    }

    bool
    operator==(const RankedList&) const = default;

 private:
    RankedList() = default;
    std::string qid_;
    std::vector<ScoredPassage> entries_;
};

}  // namespace xqg
