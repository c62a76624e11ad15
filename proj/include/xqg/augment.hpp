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

// Indexing-time augmentation of passage embeddings with the embeddings of queries
// generated for them:
//
//     emb(p) = (1 - alpha) * theta(p) + alpha * sum_{q in Q_p} theta(q)
//
// Q_p holds, for every selected language, the first n generated queries of p. The sum
// is a plain sum (not a mean), so useful alphas are small once Q_p grows.

#pragma once

#include <span>

#include "xqg/core.hpp"
#include "xqg/encoder.hpp"

namespace xqg::augment {

/// The query sum is accumulated left to right in 64-bit and rounded to 32-bit once,
/// so a fixed order gives bit-identical results. alpha == 0 returns `passage` as is.
/// Throws DimensionMismatch naming the index of the first bad query vector.
Embedding
aggregate(const Embedding& passage, std::span<const Embedding* const> queries, double alpha);

Embedding
aggregate(const Embedding& passage, std::span<const Embedding> queries, double alpha);

struct AugmentedCorpusEmbeddings {
    /// One vector per corpus passage, in corpus order.
    encoder::EmbeddingStore embeddings;
    AugmentationConfig provenance;
    /// Passages that had no generated query selected and were therefore only scaled by (1 - alpha).
    std::size_t passages_without_queries = 0;
};

/// Applies aggregate() to every passage, selecting for each language of cfg (in cfg order) the
/// first cfg.queries_per_language() queries by sample_index. `store` must hold every passage
/// vector and every selected vector under its genq_embedding_id(); a missing id fails fast with NotFoundError.
/// Asking for more queries than some (passage, language) has is a ValidationError naming
/// the first such pair in corpus order.
AugmentedCorpusEmbeddings
augment_corpus(std::span<const Passage> corpus, const encoder::EmbeddingStore& store, const GeneratedQuerySet& genq,
               const AugmentationConfig& cfg);

}  // namespace xqg::augment
