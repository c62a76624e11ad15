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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <random>

#include "oracles/eq3_bruteforce.hpp"
#include "xqg/augment.hpp"
#include "xqg/parallel.hpp"

using namespace xqg;
using namespace xqg::augment;

namespace {

const LanguageSet& langs = LanguageSet::defaults();

std::vector<float>
random_vec(std::mt19937_64& rng, std::size_t dim) {
    std::vector<float> v(dim);
    for (auto& x : v) {
        x = static_cast<float>(static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0);
    }
    return v;
}

/// 3 passages, Ja and Ru, 2 samples each; p3 has a single Ja query only.
struct Fixture {
    std::vector<Passage> corpus;
    GeneratedQuerySet genq;
    encoder::EmbeddingStore store{8};
    std::vector<std::vector<float>> passage_vecs;
    std::map<std::string, std::vector<float>> query_vecs;

    Fixture() {
        std::mt19937_64 rng(11);
        for (const char* id : {"p1", "p2", "p3"}) {
            corpus.emplace_back(id, "", std::string("text of ") + id);
            passage_vecs.push_back(random_vec(rng, 8));
            store.add(id, Embedding(passage_vecs.back()));
        }
        for (const char* id : {"p1", "p2"}) {
            for (const char* lang : {"Ru", "Ja"}) {
                for (std::uint32_t i = 0; i < 2; ++i) {
                    add(id, lang, i, rng);
                }
            }
        }
    }

    void
    add(const std::string& pid, const std::string& lang, std::uint32_t i, std::mt19937_64& rng) {
        GeneratedQuery q(pid, langs.parse(lang), "q", i);
        query_vecs[q.embedding_id()] = random_vec(rng, 8);
        store.add(q.embedding_id(), Embedding(query_vecs[q.embedding_id()]));
        genq.add(std::move(q));
    }
};

}  // namespace

TEST_CASE("aggregate hand cases") {
    const Embedding p({1, 0});
    const std::vector<Embedding> one = {Embedding({0, 1})};
    CHECK(aggregate(p, one, 0.5) == Embedding({0.5F, 0.5F}));

    // Sum, not mean: two identical queries give 2 * alpha.
    const std::vector<Embedding> two = {Embedding({0, 1}), Embedding({0, 1})};
    const auto r = aggregate(p, two, 0.01);
    CHECK(r[0] == doctest::Approx(0.99).epsilon(1e-7));
    CHECK(r[1] == doctest::Approx(0.02).epsilon(1e-7));

    // alpha = 1 with a single query returns that query.
    const Embedding q({0.3F, -0.7F});
    const std::vector<Embedding> just_q = {q};
    CHECK(aggregate(p, just_q, 1.0) == q);

    // Empty list scales by (1 - alpha).
    const std::vector<Embedding> none;
    CHECK(aggregate(Embedding({2, 4}), none, 0.25) == Embedding({1.5F, 3.0F}));
}

TEST_CASE("aggregate at alpha 0 is bit-identical") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Embedding p(random_vec(rng, 16));
        std::vector<Embedding> qs;
        for (int i = 0; i < trial % 5; ++i) {
            qs.emplace_back(random_vec(rng, 16));
        }
        const auto out = aggregate(p, qs, 0.0);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(std::memcmp(&out.values()[i], &p.values()[i], sizeof(float)) == 0);
        }
    }
}

TEST_CASE("aggregate is affine in alpha and matches the brute-force oracle") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pv = random_vec(rng, 12);
        std::vector<std::vector<float>> qv;
        std::vector<Embedding> qs;
        for (int i = 0; i < 1 + trial % 7; ++i) {
            qv.push_back(random_vec(rng, 12));
            qs.emplace_back(qv.back());
        }
        const Embedding p(pv);
        const double a = 0.03 * (trial % 10);
        const double b = 0.9 - a;
        const auto ra = aggregate(p, qs, a);
        const auto rb = aggregate(p, qs, b);
        const auto rm = aggregate(p, qs, (a + b) / 2.0);
        const auto want = oracle::augment_bruteforce(pv, qv, a);
        for (std::size_t i = 0; i < 12; ++i) {
            CHECK(rm[i] == doctest::Approx((ra[i] + rb[i]) / 2.0).epsilon(1e-6));
            CHECK(ra[i] == doctest::Approx(static_cast<double>(want[i])).epsilon(1e-6));
            long double sum = 0.0L;
            for (const auto& q : qv) {
                sum += q[i];
            }
            CHECK(ra[i] - pv[i] == doctest::Approx(static_cast<double>(a * (sum - pv[i]))).epsilon(1e-6));
        }
    }
}

TEST_CASE("aggregate reports the offending query index") {
    const std::vector<Embedding> qs = {Embedding({1, 1}), Embedding({1, 1, 1})};
    try {
        aggregate(Embedding({1, 0}), qs, 0.1);
        FAIL("expected DimensionMismatch");
    } catch (const DimensionMismatch& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
}

TEST_CASE("permuting queries changes results only at rounding level") {
    std::mt19937_64 rng(8);
    const Embedding p(random_vec(rng, 32));
    std::vector<Embedding> qs;
    for (int i = 0; i < 35; ++i) {
        qs.emplace_back(random_vec(rng, 32));
    }
    const auto fwd = aggregate(p, qs, 0.02);
    std::reverse(qs.begin(), qs.end());
    const auto rev = aggregate(p, qs, 0.02);
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(std::fabs(fwd[i] - rev[i]) <= 1e-6);
    }
}

TEST_CASE("augment_corpus equals the brute-force oracle on the fixture") {
    Fixture fx;
    const AugmentationConfig cfg(0.02, {langs.parse("Ja"), langs.parse("Ru")}, 2);
    const auto out = augment_corpus(std::span<const Passage>(fx.corpus).first(2), fx.store, fx.genq, cfg);
    REQUIRE(out.embeddings.size() == 2);
    CHECK(out.embeddings.ids() == std::vector<std::string>{"p1", "p2"});
    for (std::size_t p = 0; p < 2; ++p) {
        const std::string pid = fx.corpus[p].id();
        std::vector<std::vector<float>> qs;
        for (const char* lang : {"Ja", "Ru"}) {
            for (int i = 0; i < 2; ++i) {
                qs.push_back(fx.query_vecs.at("genq::" + pid + "::" + lang + "::" + std::to_string(i)));
            }
        }
        const auto want = oracle::augment_bruteforce(fx.passage_vecs[p], qs, 0.02L);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(out.embeddings.at(pid)[i] == doctest::Approx(static_cast<double>(want[i])).epsilon(1e-6));
        }
    }
    CHECK(out.passages_without_queries == 0);
    CHECK(out.provenance.alpha() == 0.02);
}

TEST_CASE("augment_corpus selection and minimal instance") {
    Fixture fx;
    const auto ja = langs.parse("Ja");
    const AugmentationConfig cfg(0.5, {ja}, 1);
    const auto out = augment_corpus(std::span<const Passage>(fx.corpus).first(1), fx.store, fx.genq, cfg);
    const std::vector<Embedding> q = {fx.store.at("genq::p1::Ja::0")};
    CHECK(out.embeddings.at("p1") == aggregate(fx.store.at("p1"), q, 0.5));
}

TEST_CASE("augment_corpus at alpha 0 copies passage vectors") {
    Fixture fx;
    const AugmentationConfig cfg(0.0, {langs.parse("Ja"), langs.parse("Ru")}, 2);
    const auto out = augment_corpus(std::span<const Passage>(fx.corpus).first(2), fx.store, fx.genq, cfg);
    for (const auto& p : std::span<const Passage>(fx.corpus).first(2)) {
        CHECK(out.embeddings.at(p.id()) == fx.store.at(p.id()));
    }
}

TEST_CASE("augment_corpus errors") {
    Fixture fx;
    // p3 has no generated queries, so n = 1 names it.
    const AugmentationConfig cfg(0.1, {langs.parse("Ja")}, 1);
    try {
        augment_corpus(fx.corpus, fx.store, fx.genq, cfg);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("p3") != std::string::npos);
    }
    const AugmentationConfig too_many(0.1, {langs.parse("Ru")}, 3);
    CHECK_THROWS_AS(augment_corpus(std::span<const Passage>(fx.corpus).first(2), fx.store, fx.genq, too_many),
                    ValidationError);

    encoder::EmbeddingStore partial(8);
    partial.add("p1", fx.store.at("p1"));
    const AugmentationConfig ok(0.1, {langs.parse("Ja")}, 1);
    try {
        augment_corpus(std::span<const Passage>(fx.corpus).first(1), partial, fx.genq, ok);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        CHECK(e.id() == "genq::p1::Ja::0");
    }
}

TEST_CASE("empty language list scales every passage and counts it") {
    Fixture fx;
    const AugmentationConfig cfg(0.2, {}, 5);
    const auto out = augment_corpus(fx.corpus, fx.store, fx.genq, cfg);
    CHECK(out.passages_without_queries == 3);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(out.embeddings.at("p2")[i] == doctest::Approx(0.8 * fx.store.at("p2")[i]).epsilon(1e-6));
    }
}

TEST_CASE("augment_corpus is independent of thread count") {
    Fixture fx;
    const AugmentationConfig cfg(0.02, {langs.parse("Ja"), langs.parse("Ru")}, 2, true);
    const std::span<const Passage> two = std::span<const Passage>(fx.corpus).first(2);
    set_thread_count(1);
    const auto a = augment_corpus(two, fx.store, fx.genq, cfg);
    set_thread_count(4);
    const auto b = augment_corpus(two, fx.store, fx.genq, cfg);
    set_thread_count(0);
    CHECK(a.embeddings == b.embeddings);
    CHECK(l2_norm(a.embeddings.at("p1").values()) == doctest::Approx(1.0));
}
