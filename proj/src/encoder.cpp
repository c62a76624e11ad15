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

#include "xqg/encoder.hpp"

#include <cmath>

#include "xqg/text.hpp"

namespace xqg::encoder {

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) {
        throw ValidationError("dim", "must be positive");
    }
}

void
EmbeddingStore::add(std::string id, Embedding embedding) {
    if (id.empty()) {
        throw ValidationError("id", "embedding id must be non-empty");
    }
    if (embedding.dim() != dim_) {
        throw DimensionMismatch("embedding '" + id + "' has dimension " + std::to_string(embedding.dim()) +
                                ", store dimension is " + std::to_string(dim_));
    }
    if (index_.contains(id)) {
        throw ValidationError("id", "duplicate embedding id '" + id + "'");
    }
    index_.emplace(id, ids_.size());
    ids_.push_back(std::move(id));
    embeddings_.push_back(std::move(embedding));
}

const Embedding&
EmbeddingStore::at(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw NotFoundError("embedding", std::string(id));
    }
    return embeddings_[it->second];
}

bool
EmbeddingStore::contains(std::string_view id) const {
    return index_.find(id) != index_.end();
}

void
EmbeddingStore::merge(const EmbeddingStore& other) {
    if (other.dim_ != dim_) {
        throw DimensionMismatch("cannot merge stores of dimension " + std::to_string(dim_) + " and " +
                                std::to_string(other.dim_));
    }
    for (std::size_t i = 0; i < other.size(); ++i) {
        add(other.ids_[i], other.embeddings_[i]);
    }
}

EmbeddingStore
normalized(const EmbeddingStore& store) {
    EmbeddingStore out(store.dim());
    for (std::size_t i = 0; i < store.size(); ++i) {
        out.add(store.ids()[i], l2_normalized(store.embedding(i)));
    }
    return out;
}

void
HashEncoderConfig::validate() const {
    if (dim < 2) {
        throw ValidationError("dim", "hash encoder dimension must be at least 2, got " + std::to_string(dim));
    }
}

std::uint64_t
fnv1a_64(std::uint64_t seed, std::string_view token) {
    constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
    constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t h = kOffsetBasis;
    for (int i = 0; i < 8; ++i) {
        h ^= (seed >> (8 * i)) & 0xffU;
        h *= kPrime;
    }
    for (const char c : token) {
        h ^= static_cast<unsigned char>(c);
        h *= kPrime;
    }
    return h;
}

namespace {

Embedding
normalize_accumulator(const std::vector<double>& acc) {
    double sq = 0.0;
    for (const double x : acc) {
        sq += x * x;
    }
    std::vector<float> out(acc.size(), 0.0F);
    if (sq > 0.0) {
        const double norm = std::sqrt(sq);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            out[i] = static_cast<float>(acc[i] / norm);
        }
    }
    return Embedding(std::move(out));
}

}  // namespace

Embedding
encode_text(const HashEncoderConfig& cfg, std::string_view text) {
    cfg.validate();
    std::string lowered;
    if (cfg.lowercase) {
        lowered = text::to_lower(text);
        text = lowered;
    }
    std::vector<double> acc(cfg.dim, 0.0);
    for (const auto token : text::split_whitespace(text)) {
        const std::uint64_t h = fnv1a_64(cfg.seed, token);
        acc[h % cfg.dim] += (h >> 63) == 0 ? 1.0 : -1.0;
    }
    return normalize_accumulator(acc);
}

Embedding
language_direction(const HashEncoderConfig& cfg, const LanguageTag& lang) {
    std::string tokens;
    for (std::size_t i = 0; i < cfg.dim; ++i) {
        if (i != 0) {
            tokens.push_back(' ');
        }
        tokens += lang.code();
        tokens.push_back('#');
        tokens += std::to_string(i);
    }
    return encode_text(cfg, tokens);
}

Embedding
encode_with_language_offset(const HashEncoderConfig& cfg, std::string_view text, const LanguageTag& lang,
                            double offset_scale) {
    if (!(offset_scale >= 0.0)) {
        throw ValidationError("offset_scale", "must be non-negative");
    }
    const Embedding base = encode_text(cfg, text);
    if (offset_scale == 0.0) {
        return base;
    }
    const Embedding direction = language_direction(cfg, lang);
    std::vector<double> acc(cfg.dim);
    for (std::size_t i = 0; i < cfg.dim; ++i) {
        acc[i] = static_cast<double>(base[i]) + offset_scale * static_cast<double>(direction[i]);
    }
    return normalize_accumulator(acc);
}

}  // namespace xqg::encoder
