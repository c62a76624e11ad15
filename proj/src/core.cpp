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

#include "xqg/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "xqg/text.hpp"

namespace xqg {

// ---- LanguageTag / LanguageSet ----

std::string
LanguageTag::normalize_code(std::string_view raw) {
    std::string code(raw);
    for (std::size_t i = 0; i < code.size(); ++i) {
        const auto c = static_cast<unsigned char>(code[i]);
        code[i] = static_cast<char>(i == 0 ? std::toupper(c) : std::tolower(c));
    }
    return code;
}

LanguageSet::LanguageSet(const std::vector<std::string>& codes) {
    for (const auto& raw : codes) {
        if (raw.empty()) {
            throw ValidationError("lang", "empty language code");
        }
        auto code = LanguageTag::normalize_code(raw);
        if (std::any_of(tags_.begin(), tags_.end(), [&](const LanguageTag& t) { return t.code() == code; })) {
            throw ValidationError("lang", "duplicate language code '" + code + "'");
        }
        tags_.push_back(LanguageTag(std::move(code)));
    }
}

const LanguageSet&
LanguageSet::defaults() {
    static const LanguageSet set({"Ar", "Bn", "Fi", "Ja", "Ko", "Ru", "Te", "En"});
    return set;
}

LanguageTag
LanguageSet::parse(std::string_view raw) const {
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) {
        raw.remove_prefix(1);
    }
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) {
        raw.remove_suffix(1);
    }
    if (raw.empty()) {
        throw ValidationError("lang", "empty language code");
    }
    const auto code = LanguageTag::normalize_code(raw);
    for (const auto& tag : tags_) {
        if (tag.code() == code) {
            return tag;
        }
    }
    throw ValidationError("lang", "unknown language code '" + std::string(raw) + "'");
}

std::vector<LanguageTag>
LanguageSet::parse_list(std::string_view comma_separated) const {
    std::vector<LanguageTag> out;
    std::size_t start = 0;
    while (start <= comma_separated.size()) {
        auto end = comma_separated.find(',', start);
        if (end == std::string_view::npos) {
            end = comma_separated.size();
        }
        auto item = comma_separated.substr(start, end - start);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
            item.remove_prefix(1);
        }
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
            item.remove_suffix(1);
        }
        if (!item.empty()) {
            out.push_back(parse(item));
        }
        start = end + 1;
    }
    return ordered(std::move(out));
}

bool
LanguageSet::contains(std::string_view raw) const {
    const auto code = LanguageTag::normalize_code(raw);
    return std::any_of(tags_.begin(), tags_.end(), [&](const LanguageTag& t) { return t.code() == code; });
}

std::size_t
LanguageSet::index_of(const LanguageTag& tag) const {
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        if (tags_[i] == tag) {
            return i;
        }
    }
    throw ValidationError("lang", "language '" + tag.code() + "' is not in this language set");
}

std::vector<LanguageTag>
LanguageSet::ordered(std::vector<LanguageTag> tags) const {
    std::sort(tags.begin(), tags.end(),
              [&](const LanguageTag& a, const LanguageTag& b) { return index_of(a) < index_of(b); });
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return tags;
}

// ---- corpus and query records ----

Passage::Passage(std::string id, std::string title, std::string text)
    : id_(std::move(id)), title_(std::move(title)), text_(std::move(text)) {
    if (id_.empty()) {
        throw ValidationError("id", "must be non-empty");
    }
    if (text::is_blank(text_)) {
        throw ValidationError("text", "must be non-empty after trimming (passage '" + id_ + "')");
    }
}

EvalQuery::EvalQuery(std::string qid, LanguageTag lang, std::string text, std::vector<std::string> answers)
    : qid_(std::move(qid)), lang_(std::move(lang)), text_(std::move(text)), answers_(std::move(answers)) {
    if (qid_.empty()) {
        throw ValidationError("qid", "must be non-empty");
    }
    if (text_.empty()) {
        throw ValidationError("text", "must be non-empty (query '" + qid_ + "')");
    }
    if (answers_.empty()) {
        throw ValidationError("answers", "at least one answer required (query '" + qid_ + "')");
    }
    for (const auto& a : answers_) {
        if (text::is_blank(a)) {
            throw ValidationError("answers", "answers must be non-empty (query '" + qid_ + "')");
        }
    }
}

GeneratedQuery::GeneratedQuery(std::string passage_id, LanguageTag lang, std::string text, std::uint32_t sample_index)
    : passage_id_(std::move(passage_id)), lang_(std::move(lang)), text_(std::move(text)), sample_index_(sample_index) {
    if (passage_id_.empty()) {
        throw ValidationError("passage_id", "must be non-empty");
    }
    if (text_.empty()) {
        throw ValidationError("query", "must be non-empty (passage '" + passage_id_ + "')");
    }
}

std::string
GeneratedQuery::embedding_id() const {
    return genq_embedding_id(passage_id_, lang_, sample_index_);
}

std::string
genq_embedding_id(std::string_view passage_id, const LanguageTag& lang, std::uint32_t sample_index) {
    std::string id = "genq::";
    id.append(passage_id);
    id.append("::");
    id.append(lang.code());
    id.append("::");
    id.append(std::to_string(sample_index));
    return id;
}

// ---- GeneratedQuerySet ----

void
GeneratedQuerySet::add(GeneratedQuery query) {
    if (query.sample_index() >= max_samples_) {
        throw ValidationError("sample_index", "sample_index " + std::to_string(query.sample_index()) +
                                                  " exceeds the maximum of " + std::to_string(max_samples_) +
                                                  " samples per (passage, language)");
    }
    auto& list = entries_[query.passage_id()][query.lang()];
    auto pos = std::lower_bound(list.begin(), list.end(), query.sample_index(),
                                [](const GeneratedQuery& q, std::uint32_t s) { return q.sample_index() < s; });
    if (pos != list.end() && pos->sample_index() == query.sample_index()) {
        throw ValidationError("sample_index", "duplicate (" + query.passage_id() + ", " + query.lang().code() + ", " +
                                                  std::to_string(query.sample_index()) + ")");
    }
    list.insert(pos, std::move(query));
    ++size_;
}

std::span<const GeneratedQuery>
GeneratedQuerySet::queries(std::string_view passage_id, const LanguageTag& lang) const {
    auto by_passage = entries_.find(passage_id);
    if (by_passage == entries_.end()) {
        return {};
    }
    auto by_lang = by_passage->second.find(lang);
    if (by_lang == by_passage->second.end()) {
        return {};
    }
    return by_lang->second;
}

void
GeneratedQuerySet::validate_against(const std::unordered_set<std::string>& corpus_ids) const {
    for (const auto& [pid, _] : entries_) {
        if (!corpus_ids.contains(pid)) {
            throw NotFoundError("generated-query passage_id in corpus", pid);
        }
    }
}

std::vector<LanguageTag>
GeneratedQuerySet::languages() const {
    std::vector<LanguageTag> out;
    for (const auto& [_, per_lang] : entries_) {
        for (const auto& [lang, list] : per_lang) {
            if (!list.empty() && std::find(out.begin(), out.end(), lang) == out.end()) {
                out.push_back(lang);
            }
        }
    }
    return out;
}

std::vector<const GeneratedQuery*>
GeneratedQuerySet::all() const {
    std::vector<const GeneratedQuery*> out;
    out.reserve(size_);
    for (const auto& [_, per_lang] : entries_) {
        for (const auto& [lang, list] : per_lang) {
            for (const auto& q : list) {
                out.push_back(&q);
            }
        }
    }
    return out;
}

// ---- Embedding ----

Embedding::Embedding(std::vector<float> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("values", "embedding must have at least one component");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("values", "non-finite component at index " + std::to_string(i));
        }
    }
}

Embedding
Embedding::zeros(std::size_t dim) {
    return Embedding(std::vector<float>(dim, 0.0F));
}

double
dot(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("dot: dimension " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return sum;
}

double
l2_norm(std::span<const float> v) {
    double sum = 0.0;
    for (const float x : v) {
        sum += static_cast<double>(x) * static_cast<double>(x);
    }
    return std::sqrt(sum);
}

Embedding
l2_normalized(const Embedding& e) {
    const double norm = l2_norm(e.values());
    if (norm == 0.0) {
        return e;
    }
    std::vector<float> out(e.dim());
    for (std::size_t i = 0; i < e.dim(); ++i) {
        out[i] = static_cast<float>(static_cast<double>(e[i]) / norm);
    }
    return Embedding(std::move(out));
}

// ---- AugmentationConfig ----

AugmentationConfig::AugmentationConfig(double alpha, std::vector<LanguageTag> languages,
                                       std::size_t queries_per_language, bool renormalize)
    : alpha_(alpha),
      languages_(std::move(languages)),
      queries_per_language_(queries_per_language),
      renormalize_(renormalize) {
    if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) {
        throw ValidationError("alpha", "must lie in [0, 1], got " + std::to_string(alpha_));
    }
    for (std::size_t i = 0; i < languages_.size(); ++i) {
        for (std::size_t j = i + 1; j < languages_.size(); ++j) {
            if (languages_[i] == languages_[j]) {
                throw ValidationError("languages", "duplicate language '" + languages_[i].code() + "'");
            }
        }
    }
}

AugmentationConfig
AugmentationConfig::none() {
    return AugmentationConfig(0.0, {}, 0);
}

AugmentationConfig
AugmentationConfig::with_alpha(double alpha) const {
    return AugmentationConfig(alpha, languages_, queries_per_language_, renormalize_);
}

AugmentationConfig
AugmentationConfig::with_languages(std::vector<LanguageTag> languages) const {
    return AugmentationConfig(alpha_, std::move(languages), queries_per_language_, renormalize_);
}

AugmentationConfig
AugmentationConfig::with_queries_per_language(std::size_t n) const {
    return AugmentationConfig(alpha_, languages_, n, renormalize_);
}

// ---- RankedList ----

namespace {

void
check_unique_ids(const std::string& qid, const std::vector<ScoredPassage>& entries) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(entries.size());
    for (const auto& e : entries) {
        if (!seen.insert(e.passage_id).second) {
            throw ValidationError("entries", "duplicate passage '" + e.passage_id + "' in ranking for '" + qid + "'");
        }
    }
}

}  // namespace

RankedList::RankedList(std::string qid, std::vector<ScoredPassage> entries)
    : qid_(std::move(qid)), entries_(std::move(entries)) {
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (!ranks_before(entries_[i - 1], entries_[i])) {
            throw ValidationError("entries", "ranking for '" + qid_ + "' is out of order at rank " +
                                                 std::to_string(i + 1));
        }
    }
    check_unique_ids(qid_, entries_);
}

RankedList
RankedList::in_rank_order(std::string qid, std::vector<ScoredPassage> entries) {
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i - 1].score < entries[i].score) {
            throw ValidationError("entries", "scores for '" + qid + "' increase at rank " + std::to_string(i + 1));
        }
    }
    check_unique_ids(qid, entries);
    RankedList list;
    list.qid_ = std::move(qid);
    list.entries_ = std::move(entries);
    return list;
}

}  // namespace xqg
