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

// Readers and writers for every on-disk artifact.
//
//   corpus.jsonl        {"id", "title"?, "text"}
//   eval_queries.jsonl  {"qid", "lang", "text", "answers": [...]}
//   genq.jsonl          {"passage_id", "lang", "query", "sample_index"}
//   *.xqge              "XQGE" | u32 version=1 | u32 dim | u64 count, then count records of
//                       {u16 id_len | id bytes | dim x f32}, all little-endian
//   *.run               "qid Q0 passage_id rank score tag", score with 6 decimals
//
// Errors are FormatError with the file name and, for text formats, the 1-based line.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "xqg/core.hpp"
#include "xqg/encoder.hpp"

namespace xqg::formats {

inline constexpr char kEmbeddingMagic[4] = {'X', 'Q', 'G', 'E'};
inline constexpr std::uint32_t kEmbeddingVersion = 1;
inline constexpr std::uint32_t kMaxDim = 65536;

std::vector<Passage>
read_corpus(const std::filesystem::path& path);

void
write_corpus(std::span<const Passage> corpus, const std::filesystem::path& path);

std::unordered_set<std::string>
id_set(std::span<const Passage> corpus);

std::vector<EvalQuery>
read_eval_queries(const std::filesystem::path& path, const LanguageSet& languages = LanguageSet::defaults());

void
write_eval_queries(std::span<const EvalQuery> queries, const std::filesystem::path& path);

/// Rejects unknown languages, passage ids outside `corpus_ids`, and repeated
/// (passage_id, lang, sample_index) triples.
GeneratedQuerySet
read_generated_queries(const std::filesystem::path& path, const std::unordered_set<std::string>& corpus_ids,
                       const LanguageSet& languages = LanguageSet::defaults());

/// Same, without the corpus membership check.
GeneratedQuerySet
read_generated_queries(const std::filesystem::path& path, const LanguageSet& languages = LanguageSet::defaults());

/// One line per query, ordered as GeneratedQuerySet::all().
void
write_generated_queries(const GeneratedQuerySet& genq, const std::filesystem::path& path);

encoder::EmbeddingStore
read_embeddings(const std::filesystem::path& path);

void
write_embeddings(const encoder::EmbeddingStore& store, const std::filesystem::path& path);

/// Stream forms of the binary codec; `source` names the input in error messages.
encoder::EmbeddingStore
decode_embeddings(std::istream& in, const std::string& source);

void
encode_embeddings(const encoder::EmbeddingStore& store, std::ostream& out);

void
write_run(std::span<const RankedList> lists, std::string_view tag, const std::filesystem::path& path);

/// Lines grouped by qid in first-appearance order, entries in rank order.
std::vector<RankedList>
read_run(const std::filesystem::path& path);

/// "%.6f" formatting used by run files.
std::string
format_score(double score);

}  // namespace xqg::formats
