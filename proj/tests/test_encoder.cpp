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

#include <cmath>

#include "oracles/fnv_reference.hpp"
#include "xqg/encoder.hpp"

using namespace xqg;
using namespace xqg::encoder;

TEST_CASE("reference FNV-1a matches published vectors") {
    // Sanity of the oracle itself before it judges the library.
    CHECK(oracle::fnv1a64_bytes("") == 0xcbf29ce484222325ULL);
    CHECK(oracle::fnv1a64_bytes("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(oracle::fnv1a64_bytes("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("seeded hash equals FNV-1a over seed bytes then token") {
    for (const std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefcafef00dULL}) {
        for (const char* token : {"", "a", "paris", "日本", "genq::p1::Ja::0"}) {
            CHECK(fnv1a_64(seed, token) == oracle::fnv1a64_bytes(oracle::seed_prefix(seed) + token));
        }
    }
}

TEST_CASE("encode_text matches the reference feature hasher") {
    const std::vector<std::string> texts = {"the capital of France is Paris", "Paris paris PARIS", "a b c d e f g h",
                                            "single", "w0001 w0002 ans0003 w0001"};
    for (const std::size_t dim : {2UL, 7UL, 64UL, 768UL}) {
        for (const std::uint64_t seed : {0ULL, 9ULL}) {
            const HashEncoderConfig cfg{dim, seed, true};
            for (const auto& t : texts) {
                const auto got = encode_text(cfg, t);
                const auto want = oracle::hash_encode_ascii(t, dim, seed);
                REQUIRE(got.dim() == dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-6));
                }
            }
        }
    }
}

TEST_CASE("encoder properties") {
    const HashEncoderConfig cfg{64, 0, true};
    CHECK(encode_text(cfg, "   ") == Embedding::zeros(64));
    const auto e = encode_text(cfg, "one two three");
    CHECK(l2_norm(e.values()) == doctest::Approx(1.0));
    CHECK(encode_text(cfg, "One TWO three") == e);
    const HashEncoderConfig cased{64, 0, false};
    CHECK_FALSE(encode_text(cased, "One") == encode_text(cased, "one"));
    CHECK_THROWS_AS(encode_text(HashEncoderConfig{1, 0, true}, "x"), ValidationError);
    CHECK_THROWS_AS(encode_text(HashEncoderConfig{0, 0, true}, "x"), ValidationError);
}

TEST_CASE("language directions are unit and nearly orthogonal") {
    const HashEncoderConfig cfg{256, 0, true};
    const auto& set = LanguageSet::defaults();
    const auto ja = language_direction(cfg, set.parse("Ja"));
    const auto ru = language_direction(cfg, set.parse("Ru"));
    CHECK(l2_norm(ja.values()) == doctest::Approx(1.0));
    CHECK(std::fabs(dot(ja.values(), ru.values())) < 0.3);
    std::string tokens;
    for (int i = 0; i < 256; ++i) {
        tokens += (i ? " " : "") + std::string("ja#") + std::to_string(i);
    }
    CHECK(ja == encode_text(cfg, tokens));
}

TEST_CASE("language offset") {
    const HashEncoderConfig cfg{64, 3, true};
    const auto ja = LanguageSet::defaults().parse("Ja");
    const std::string text = "the capital of France is Paris";
    CHECK(encode_with_language_offset(cfg, text, ja, 0.0) == encode_text(cfg, text));
    CHECK_THROWS_AS(encode_with_language_offset(cfg, text, ja, -1.0), ValidationError);

    const auto base = encode_text(cfg, text);
    const auto dir = language_direction(cfg, ja);
    const auto off = encode_with_language_offset(cfg, text, ja, 2.0);
    std::vector<double> want(64);
    double n = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
        want[i] = base[i] + 2.0 * dir[i];
        n += want[i] * want[i];
    }
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(off[i] == doctest::Approx(want[i] / std::sqrt(n)).epsilon(1e-6));
    }
    // A larger offset pulls further toward the language direction.
    CHECK(dot(encode_with_language_offset(cfg, text, ja, 4.0).values(), dir.values()) >
          dot(off.values(), dir.values()));
}

TEST_CASE("embedding store") {
    EmbeddingStore s(2);
    s.add("b", Embedding({1, 0}));
    s.add("a", Embedding({0, 1}));
    CHECK(s.ids() == std::vector<std::string>{"b", "a"});
    CHECK(s.at("a") == Embedding({0, 1}));
    CHECK_THROWS_AS(s.at("zz"), NotFoundError);
    CHECK_THROWS_AS(s.add("a", Embedding({1, 1})), ValidationError);
    CHECK_THROWS_AS(s.add("c", Embedding({1, 1, 1})), DimensionMismatch);
    CHECK_THROWS_AS(s.add("", Embedding({1, 1})), ValidationError);
    CHECK_THROWS_AS(EmbeddingStore(0), ValidationError);

    EmbeddingStore t(2);
    t.add("c", Embedding({3, 4}));
    s.merge(t);
    CHECK(s.size() == 3);
    CHECK_THROWS_AS(s.merge(t), ValidationError);
    CHECK_THROWS_AS(s.merge(EmbeddingStore(3)), DimensionMismatch);
    const auto n = normalized(s);
    CHECK(n.at("c")[0] == doctest::Approx(0.6));
    try {
        s.at("missing");
    } catch (const NotFoundError& e) {
        CHECK(e.id() == "missing");
    }
}
