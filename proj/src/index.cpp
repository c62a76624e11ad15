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

#include "xqg/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "xqg/binary.hpp"
#include "xqg/parallel.hpp"
#include "xqg/random.hpp"

namespace xqg::index {

namespace {

constexpr char kIndexMagic[4] = {'X', 'Q', 'G', 'I'};
constexpr std::uint32_t kIndexVersion = 1;

struct Candidate {
    double score;
    std::uint32_t row;
};

double
dot_rows(const float* a, std::span<const float> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return sum;
}

double
squared_distance(std::span<const float> a, std::span<const float> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sum += d * d;
    }
    return sum;
}

void
normalize_in_place(std::span<float> v, std::span<const double> src) {
    double sq = 0.0;
    for (const double x : src) {
        sq += x * x;
    }
    const double norm = std::sqrt(sq);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = norm > 0.0 ? static_cast<float>(src[i] / norm) : 0.0F;
    }
}

void
copy_rows(const encoder::EmbeddingStore& embeddings, std::vector<std::string>& ids, std::vector<float>& rows) {
    ids = embeddings.ids();
    rows.resize(embeddings.size() * embeddings.dim());
    for (std::size_t r = 0; r < embeddings.size(); ++r) {
        const auto v = embeddings.embedding(r).values();
        std::copy(v.begin(), v.end(), rows.begin() + static_cast<std::ptrdiff_t>(r * embeddings.dim()));
    }
}

/// Spherical-assignment k-means over the row-major matrix.
class KMeans {
 public:
    KMeans(const std::vector<float>& rows, std::size_t n, std::size_t dim, std::size_t k)
        : rows_(rows), n_(n), dim_(dim), k_(k), centroids_(k * dim, 0.0), unit_(k * dim, 0.0F), assign_(n, 0) {
    }

    void
    init_plus_plus(std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> chosen;
        chosen.reserve(k_);
        std::vector<char> taken(n_, 0);
        auto pick = [&](std::size_t r) {
            chosen.push_back(r);
            taken[r] = 1;
        };
        pick(std::min(n_ - 1, static_cast<std::size_t>(random::uniform01(rng) * static_cast<double>(n_))));

        std::vector<double> nearest(n_);
        for (std::size_t r = 0; r < n_; ++r) {
            nearest[r] = squared_distance(row(r), row(chosen[0]));
        }
        while (chosen.size() < k_) {
            double total = 0.0;
            for (std::size_t r = 0; r < n_; ++r) {
                total += taken[r] ? 0.0 : nearest[r];
            }
            std::size_t next = n_;
            if (total > 0.0) {
                const double target = random::uniform01(rng) * total;
                double acc = 0.0;
                for (std::size_t r = 0; r < n_; ++r) {
                    if (taken[r]) {
                        continue;
                    }
                    acc += nearest[r];
                    if (acc > target && nearest[r] > 0.0) {
                        next = r;
                        break;
                    }
                }
            }
            if (next == n_) {
                // All remaining points coincide with a chosen seed (or rounding ran past the end).
                next = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
            }
            pick(next);
            for (std::size_t r = 0; r < n_; ++r) {
                nearest[r] = std::min(nearest[r], squared_distance(row(r), row(next)));
            }
        }
        for (std::size_t c = 0; c < k_; ++c) {
            const auto src = row(chosen[c]);
            for (std::size_t i = 0; i < dim_; ++i) {
                centroids_[c * dim_ + i] = static_cast<double>(src[i]);
            }
        }
        refresh_unit();
    }

    void
    assign() {
        parallel_for(n_, [&](std::size_t r) { assign_[r] = nearest_centroid(r); });
    }

    void
    update() {
        std::fill(centroids_.begin(), centroids_.end(), 0.0);
        std::vector<std::size_t> counts(k_, 0);
        for (std::size_t r = 0; r < n_; ++r) {
            accumulate(assign_[r], r, counts);
        }
        for (std::size_t c = 0; c < k_; ++c) {
            if (counts[c] > 0) {
                scale_centroid(c, counts[c]);
            }
        }
        reseed_empty(counts);
        refresh_unit();
    }

    std::vector<std::vector<std::uint32_t>>
    lists() const {
        std::vector<std::vector<std::uint32_t>> out(k_);
        for (std::size_t r = 0; r < n_; ++r) {
            out[assign_[r]].push_back(static_cast<std::uint32_t>(r));
        }
        return out;
    }

    const std::vector<float>&
    unit_centroids() const noexcept {
        return unit_;
    }

 private:
    std::span<const float>
    row(std::size_t r) const {
        return {rows_.data() + r * dim_, dim_};
    }

    std::uint32_t
    nearest_centroid(std::size_t r) const {
        const auto x = row(r);
        std::uint32_t best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k_; ++c) {
            const double s = dot_rows(unit_.data() + c * dim_, x);
            if (s > best_score) {
                best_score = s;
                best = static_cast<std::uint32_t>(c);
            }
        }
        return best;
    }

    void
    accumulate(std::size_t c, std::size_t r, std::vector<std::size_t>& counts) {
        const auto x = row(r);
        for (std::size_t i = 0; i < dim_; ++i) {
            centroids_[c * dim_ + i] += static_cast<double>(x[i]);
        }
        ++counts[c];
    }

    void
    scale_centroid(std::size_t c, std::size_t count) {
        for (std::size_t i = 0; i < dim_; ++i) {
            centroids_[c * dim_ + i] /= static_cast<double>(count);
        }
    }

    void
    recompute(std::size_t c, std::vector<std::size_t>& counts) {
        std::fill(centroids_.begin() + static_cast<std::ptrdiff_t>(c * dim_),
                  centroids_.begin() + static_cast<std::ptrdiff_t>((c + 1) * dim_), 0.0);
        counts[c] = 0;
        for (std::size_t r = 0; r < n_; ++r) {
            if (assign_[r] == c) {
                accumulate(c, r, counts);
            }
        }
        if (counts[c] > 0) {
            scale_centroid(c, counts[c]);
        }
    }

    void
    reseed_empty(std::vector<std::size_t>& counts) {
        for (std::size_t c = 0; c < k_; ++c) {
            if (counts[c] != 0) {
                continue;
            }
            const auto largest =
                static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
            if (counts[largest] < 2) {
                return;
            }
            std::vector<float> unit(dim_);
            normalize_in_place(unit, std::span<const double>(centroids_.data() + largest * dim_, dim_));
            std::size_t farthest = n_;
            double lowest = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < n_; ++r) {
                if (assign_[r] != largest) {
                    continue;
                }
                const double s = dot_rows(unit.data(), row(r));
                if (s < lowest) {
                    lowest = s;
                    farthest = r;
                }
            }
            assign_[farthest] = static_cast<std::uint32_t>(c);
            recompute(c, counts);
            recompute(largest, counts);
        }
    }

    void
    refresh_unit() {
        for (std::size_t c = 0; c < k_; ++c) {
            normalize_in_place(std::span<float>(unit_.data() + c * dim_, dim_),
                               std::span<const double>(centroids_.data() + c * dim_, dim_));
        }
    }

    const std::vector<float>& rows_;
    std::size_t n_;
    std::size_t dim_;
    std::size_t k_;
    std::vector<double> centroids_;
    std::vector<float> unit_;
    std::vector<std::uint32_t> assign_;
};

}  // namespace

VectorIndex
build_exact(const encoder::EmbeddingStore& embeddings) {
    if (embeddings.size() == 0) {
        throw ValidationError("embeddings", "cannot index an empty store");
    }
    VectorIndex index;
    index.variant_ = Variant::Exact;
    index.dim_ = embeddings.dim();
    copy_rows(embeddings, index.ids_, index.rows_);
    return index;
}

VectorIndex
build_ivf(const encoder::EmbeddingStore& embeddings, const IvfOptions& options) {
    if (embeddings.size() == 0) {
        throw ValidationError("embeddings", "cannot index an empty store");
    }
    if (options.nlist == 0 || options.nlist > embeddings.size()) {
        throw ValidationError("nlist", "must lie in [1, " + std::to_string(embeddings.size()) + "], got " +
                                           std::to_string(options.nlist));
    }
    if (options.kmeans_iters == 0) {
        throw ValidationError("kmeans_iters", "must be positive");
    }
    if (options.default_nprobe == 0 || options.default_nprobe > options.nlist) {
        throw ValidationError("nprobe", "default nprobe must lie in [1, nlist]");
    }

    VectorIndex index;
    index.variant_ = Variant::Ivf;
    index.dim_ = embeddings.dim();
    index.default_nprobe_ = options.default_nprobe;
    copy_rows(embeddings, index.ids_, index.rows_);

    KMeans km(index.rows_, index.size(), index.dim_, options.nlist);
    km.init_plus_plus(options.seed);
    for (std::size_t it = 0; it < options.kmeans_iters; ++it) {
        km.assign();
        km.update();
    }
    // No trailing assign: lists stay those of the last update, re-seeded clusters included.
    index.centroids_ = km.unit_centroids();
    index.lists_ = km.lists();
    return index;
}

RankedList
VectorIndex::search(std::string qid, const Embedding& query, std::size_t k, std::optional<std::size_t> nprobe) const {
    if (query.dim() != dim_) {
        throw DimensionMismatch("search: query dimension " + std::to_string(query.dim()) + ", index dimension " +
                                std::to_string(dim_));
    }
    if (k == 0) {
        throw ValidationError("k", "must be positive");
    }
    const auto q = query.values();

    std::vector<Candidate> candidates;
    if (variant_ == Variant::Exact) {
        candidates.reserve(size());
        for (std::size_t r = 0; r < size(); ++r) {
            candidates.push_back({dot_rows(rows_.data() + r * dim_, q), static_cast<std::uint32_t>(r)});
        }
    } else {
        const std::size_t probes = nprobe.value_or(default_nprobe_);
        if (probes == 0 || probes > nlist()) {
            throw ValidationError("nprobe", "must lie in [1, " + std::to_string(nlist()) + "], got " +
                                                std::to_string(probes));
        }
        std::vector<Candidate> lists_by_score;
        lists_by_score.reserve(nlist());
        for (std::size_t c = 0; c < nlist(); ++c) {
            lists_by_score.push_back({dot_rows(centroids_.data() + c * dim_, q), static_cast<std::uint32_t>(c)});
        }
        std::partial_sort(lists_by_score.begin(), lists_by_score.begin() + static_cast<std::ptrdiff_t>(probes),
                          lists_by_score.end(), [](const Candidate& a, const Candidate& b) {
                              return a.score != b.score ? a.score > b.score : a.row < b.row;
                          });
        for (std::size_t p = 0; p < probes; ++p) {
            for (const std::uint32_t r : lists_[lists_by_score[p].row]) {
                candidates.push_back({dot_rows(rows_.data() + r * dim_, q), r});
            }
        }
    }

    const std::size_t top = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(top), candidates.end(),
                      [&](const Candidate& a, const Candidate& b) {
                          return a.score != b.score ? a.score > b.score : ids_[a.row] < ids_[b.row];
                      });
    std::vector<ScoredPassage> entries;
    entries.reserve(top);
    for (std::size_t i = 0; i < top; ++i) {
        entries.push_back({ids_[candidates[i].row], candidates[i].score});
    }
    return RankedList(std::move(qid), std::move(entries));
}

std::vector<RankedList>
search_all(const VectorIndex& index, const encoder::EmbeddingStore& queries, std::span<const std::string> qids,
           std::size_t k, std::optional<std::size_t> nprobe) {
    std::vector<std::optional<RankedList>> slots(qids.size());
    parallel_for(qids.size(), [&](std::size_t i) { slots[i] = index.search(qids[i], queries.at(qids[i]), k, nprobe); });
    std::vector<RankedList> out;
    out.reserve(slots.size());
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

void
write_index(const VectorIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::out | std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError(path.string() + ": cannot open for writing");
    }
    binary::Writer w(out);
    w.bytes(std::string_view(kIndexMagic, 4));
    w.u32(kIndexVersion);
    w.u32(static_cast<std::uint32_t>(index.variant()));
    w.u32(static_cast<std::uint32_t>(index.dim()));
    w.u64(index.size());
    w.u32(static_cast<std::uint32_t>(index.nlist()));
    for (std::size_t r = 0; r < index.size(); ++r) {
        w.record(index.ids()[r], index.row(r));
    }
    if (index.variant() == Variant::Ivf) {
        w.u32(static_cast<std::uint32_t>(index.default_nprobe()));
        for (std::size_t c = 0; c < index.nlist(); ++c) {
            for (const float v : index.centroid(c)) {
                w.f32(v);
            }
        }
        for (std::size_t c = 0; c < index.nlist(); ++c) {
            const auto list = index.list(c);
            w.u64(list.size());
            for (const std::uint32_t r : list) {
                w.u32(r);
            }
        }
    }
    out.flush();
    if (!out) {
        throw FormatError(path.string() + ": write failed");
    }
}

VectorIndex
read_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::in | std::ios::binary);
    if (!in) {
        throw FormatError(path.string() + ": cannot open for reading");
    }
    binary::Reader r(in, path.string());
    if (r.bytes(4, "magic") != std::string_view(kIndexMagic, 4)) {
        r.fail("bad magic (expected XQGI)");
    }
    if (const auto v = r.u32("version"); v != kIndexVersion) {
        r.fail("unsupported version " + std::to_string(v));
    }
    const std::uint32_t variant = r.u32("variant");
    if (variant > 1) {
        r.fail("unknown index variant " + std::to_string(variant));
    }
    const std::uint32_t dim = r.u32("dim");
    if (dim < 1 || dim > 65536) {
        r.fail("dimension outside [1, 65536]");
    }
    const std::uint64_t count = r.u64("count");
    const std::uint32_t nlist = r.u32("nlist");
    if (count == 0) {
        r.fail("empty index");
    }

    VectorIndex index;
    index.variant_ = static_cast<Variant>(variant);
    index.dim_ = dim;
    std::unordered_set<std::string> seen;
    for (std::uint64_t i = 0; i < count; ++i) {
        auto rec = r.record(dim);
        if (!seen.insert(rec.id).second) {
            r.fail("duplicate id '" + rec.id + "'");
        }
        index.ids_.push_back(std::move(rec.id));
        index.rows_.insert(index.rows_.end(), rec.values.begin(), rec.values.end());
    }
    if (index.variant_ == Variant::Exact) {
        if (nlist != 0) {
            r.fail("exact index with nonzero nlist");
        }
    } else {
        if (nlist == 0 || nlist > count) {
            r.fail("nlist outside [1, count]");
        }
        index.default_nprobe_ = r.u32("default nprobe");
        if (index.default_nprobe_ == 0 || index.default_nprobe_ > nlist) {
            r.fail("default nprobe outside [1, nlist]");
        }
        index.centroids_.resize(static_cast<std::size_t>(nlist) * dim);
        for (auto& v : index.centroids_) {
            v = r.f32("centroids");
            if (!std::isfinite(v)) {
                r.fail("non-finite centroid component");
            }
        }
        std::vector<char> covered(count, 0);
        index.lists_.resize(nlist);
        for (auto& list : index.lists_) {
            const std::uint64_t len = r.u64("list size");
            if (len > count) {
                r.fail("inverted list longer than the index");
            }
            list.reserve(len);
            for (std::uint64_t j = 0; j < len; ++j) {
                const std::uint32_t row = r.u32("list entry");
                if (row >= count || covered[row]) {
                    r.fail("inverted lists do not partition the rows");
                }
                covered[row] = 1;
                list.push_back(row);
            }
        }
        if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
            r.fail("inverted lists do not cover every row");
        }
    }
    r.expect_end();
    return index;
}

}  // namespace xqg::index
