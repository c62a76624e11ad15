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

#include "xqg/augment.hpp"

#include <optional>

#include "xqg/parallel.hpp"

namespace xqg::augment {

Embedding
aggregate(const Embedding& passage, std::span<const Embedding* const> queries, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("alpha", "must lie in [0, 1], got " + std::to_string(alpha));
    }
    const std::size_t dim = passage.dim();
    for (std::size_t j = 0; j < queries.size(); ++j) {
        if (queries[j]->dim() != dim) {
            throw DimensionMismatch("aggregate: query embedding " + std::to_string(j) + " has dimension " +
                                    std::to_string(queries[j]->dim()) + ", passage has " + std::to_string(dim));
        }
    }
    if (alpha == 0.0) {
        return passage;
    }

    std::vector<double> sum(dim, 0.0);
    for (const Embedding* q : queries) {
        const auto v = q->values();
        for (std::size_t i = 0; i < dim; ++i) {
            sum[i] += static_cast<double>(v[i]);
        }
    }
    std::vector<float> out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = static_cast<float>((1.0 - alpha) * static_cast<double>(passage[i]) + alpha * sum[i]);
    }
    return Embedding(std::move(out));
}

Embedding
aggregate(const Embedding& passage, std::span<const Embedding> queries, double alpha) {
    std::vector<const Embedding*> ptrs;
    ptrs.reserve(queries.size());
    for (const auto& q : queries) {
        ptrs.push_back(&q);
    }
    return aggregate(passage, std::span<const Embedding* const>(ptrs), alpha);
}

AugmentedCorpusEmbeddings
augment_corpus(std::span<const Passage> corpus, const encoder::EmbeddingStore& store, const GeneratedQuerySet& genq,
               const AugmentationConfig& cfg) {
    const std::size_t n = cfg.queries_per_language();

    // Validate every selection before any arithmetic so errors name the first offender.
    for (const auto& p : corpus) {
        for (const auto& lang : cfg.languages()) {
            const std::size_t available = genq.available(p.id(), lang);
            if (n > available) {
                throw ValidationError("queries_per_language",
                                      "requested " + std::to_string(n) + " generated queries but passage '" + p.id() +
                                          "' has only " + std::to_string(available) + " for language " + lang.code());
            }
        }
    }

    std::vector<std::optional<Embedding>> results(corpus.size());
    std::vector<char> without_queries(corpus.size(), 0);
    parallel_for(corpus.size(), [&](std::size_t row) {
        const Passage& p = corpus[row];
        const Embedding& passage_vec = store.at(p.id());
        std::vector<const Embedding*> selected;
        selected.reserve(n * cfg.languages().size());
        for (const auto& lang : cfg.languages()) {
            const auto list = genq.queries(p.id(), lang);
            for (std::size_t i = 0; i < n; ++i) {
                selected.push_back(&store.at(list[i].embedding_id()));
            }
        }
        if (selected.empty()) {
            without_queries[row] = 1;
        }
        Embedding out = aggregate(passage_vec, selected, cfg.alpha());
        if (cfg.renormalize()) {
            out = l2_normalized(out);
        }
        results[row] = std::move(out);
    });

    AugmentedCorpusEmbeddings augmented{encoder::EmbeddingStore(store.dim()), cfg, 0};
    for (std::size_t row = 0; row < corpus.size(); ++row) {
        augmented.embeddings.add(corpus[row].id(), std::move(*results[row]));
        augmented.passages_without_queries += static_cast<std::size_t>(without_queries[row]);
    }
    return augmented;
}

}  // namespace xqg::augment
