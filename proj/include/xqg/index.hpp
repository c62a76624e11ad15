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

// Maximum inner-product search over passage vectors: an exact scan, and an IVF index
// whose probe count trades exactness for speed (nprobe == nlist is exact).
//
// Index file layout (little-endian):
//   "XQGI" | u32 version=1 | u32 variant (0 exact, 1 ivf) | u32 dim | u64 count | u32 nlist
//   count records {u16 id_len | id | dim x f32}
//   ivf only: u32 default_nprobe | nlist x dim f32 centroids | nlist x {u64 size | size x u32 row}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xqg/augment.hpp"
#include "xqg/core.hpp"
#include "xqg/encoder.hpp"

namespace xqg::index {

enum class Variant : std::uint32_t { Exact = 0, Ivf = 1 };

struct IvfOptions {
    std::size_t nlist = 16;
    std::size_t kmeans_iters = 20;
    std::uint64_t seed = 0;
    std::size_t default_nprobe = 1;
};

class VectorIndex {
 public:
    Variant
    variant() const noexcept {
        return variant_;
    }
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
    std::span<const float>
    row(std::size_t i) const {
        return {rows_.data() + i * dim_, dim_};
    }

    /// 0 for the exact variant.
    std::size_t
    nlist() const noexcept {
        return lists_.size();
    }
    std::size_t
    default_nprobe() const noexcept {
        return default_nprobe_;
    }
    /// L2-normalized centroid of list c.
    std::span<const float>
    centroid(std::size_t c) const {
        return {centroids_.data() + c * dim_, dim_};
    }
    std::span<const std::uint32_t>
    list(std::size_t c) const {
        return lists_.at(c);
    }

    /// Top-k rows by inner product, ties by passage id ascending. k larger than the index
    /// returns everything. For IVF, nprobe defaults to default_nprobe() and must lie in
    /// [1, nlist]; it is ignored for the exact variant.
    RankedList
    search(std::string qid, const Embedding& query, std::size_t k, std::optional<std::size_t> nprobe = {}) const;

    bool
    operator==(const VectorIndex&) const = default;

    friend VectorIndex
    build_exact(const encoder::EmbeddingStore& embeddings);
    friend VectorIndex
    build_ivf(const encoder::EmbeddingStore& embeddings, const IvfOptions& options);
    friend VectorIndex
    read_index(const std::filesystem::path& path);

 private:
    VectorIndex() = default;

    Variant variant_ = Variant::Exact;
    std::size_t dim_ = 0;
    std::vector<std::string> ids_;
    std::vector<float> rows_;
    std::vector<float> centroids_;
    std::vector<std::vector<std::uint32_t>> lists_;
    std::size_t default_nprobe_ = 1;
};

/// Rows in store order. Throws ValidationError on an empty store.
VectorIndex
build_exact(const encoder::EmbeddingStore& embeddings);

inline VectorIndex
build_exact(const augment::AugmentedCorpusEmbeddings& embeddings) {
    return build_exact(embeddings.embeddings);
}

/// Seeded k-means++ initialization followed by options.kmeans_iters Lloyd iterations.
/// Points are assigned to the centroid of maximum inner product after L2-normalizing the
/// centroids; an emptied cluster is re-seeded with the member of the largest cluster that
/// is farthest from its centroid. Requires 1 <= nlist <= size.
VectorIndex
build_ivf(const encoder::EmbeddingStore& embeddings, const IvfOptions& options);

inline VectorIndex
build_ivf(const augment::AugmentedCorpusEmbeddings& embeddings, const IvfOptions& options) {
    return build_ivf(embeddings.embeddings, options);
}

inline RankedList
search(const VectorIndex& index, const Embedding& query, std::size_t k, std::optional<std::size_t> nprobe = {},
       std::string qid = {}) {
    return index.search(std::move(qid), query, k, nprobe);
}

/// One ranking per qid, in `qids` order; query vectors are looked up in `queries`.
std::vector<RankedList>
search_all(const VectorIndex& index, const encoder::EmbeddingStore& queries, std::span<const std::string> qids,
           std::size_t k, std::optional<std::size_t> nprobe = {});

void
write_index(const VectorIndex& index, const std::filesystem::path& path);

VectorIndex
read_index(const std::filesystem::path& path);

}  // namespace xqg::index
