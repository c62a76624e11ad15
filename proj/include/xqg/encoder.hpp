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

// Embedding providers. A text encoder is anything that yields an EmbeddingStore;
// real model encoders export `.xqge` files, and the hashing encoder below is a
// deterministic stand-in used for tests and synthetic experiments.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xqg/core.hpp"

namespace xqg::encoder {

/// Embeddings keyed by id, kept in insertion order so writes are reproducible.
class EmbeddingStore {
 public:
    explicit EmbeddingStore(std::size_t dim);

    /// Rejects duplicate ids and vectors of the wrong length.
    void
    add(std::string id, Embedding embedding);

    /// Throws NotFoundError naming the id; never returns a silent zero.
    const Embedding&
    at(std::string_view id) const;

    bool
    contains(std::string_view id) const;

    std::size_t
    dim() const noexcept {
        return dim_;
    }
    std::size_t
    size() const noexcept {
        return ids_.size();
    }
    const std::vector<std::string>&
    ids() const noexcept {
        return ids_;
    }
    const Embedding&
    embedding(std::size_t row) const {
        return embeddings_.at(row);
    }

    /// Appends every record of `other`; dims must agree and ids must not collide.
    void
    merge(const EmbeddingStore& other);

    bool
    operator==(const EmbeddingStore& other) const {
        return dim_ == other.dim_ && ids_ == other.ids_ && embeddings_ == other.embeddings_;
    }

 private:
    struct Hash {
        using is_transparent = void;
        std::size_t
        operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::size_t dim_;
    std::vector<std::string> ids_;
    std::vector<Embedding> embeddings_;
    std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

/// Copy with every vector L2-normalized (zero vectors stay zero).
EmbeddingStore
normalized(const EmbeddingStore& store);

struct HashEncoderConfig {
    std::size_t dim = 64;
    std::uint64_t seed = 0;
    bool lowercase = true;

    /// Throws ValidationError when dim < 2.
    void
    validate() const;
};

/// FNV-1a 64 over the seed's 8 little-endian bytes followed by `token`.
std::uint64_t
fnv1a_64(std::uint64_t seed, std::string_view token);

/// Signed feature hashing of whitespace tokens, L2-normalized. Each token hashes to
/// component h mod dim with sign + when bit 63 of h is clear. No tokens -> zero vector.
Embedding
encode_text(const HashEncoderConfig& cfg, std::string_view text);

/// Unit vector for a language: the hashed encoding of "<code>#0 ... <code>#(dim-1)".
Embedding
language_direction(const HashEncoderConfig& cfg, const LanguageTag& lang);

/// normalize(encode_text(text) + offset_scale * language_direction(lang)).
Embedding
encode_with_language_offset(const HashEncoderConfig& cfg, std::string_view text, const LanguageTag& lang,
                            double offset_scale);

}  // namespace xqg::encoder
