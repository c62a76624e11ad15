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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "xqg/experiments.hpp"
#include "xqg/random.hpp"

namespace xqg::experiments {

void
SyntheticWorldSpec::validate() const {
    auto positive = [](std::size_t v, const char* field) {
        if (v == 0) {
            throw ValidationError(field, "must be positive");
        }
    };
    positive(num_passages, "num_passages");
    positive(vocab_per_language, "vocab_per_language");
    positive(passage_tokens, "passage_tokens");
    positive(query_tokens, "query_tokens");
    positive(num_topics, "num_topics");
    positive(topic_vocab, "topic_vocab");
    positive(samples_per_language, "samples_per_language");
    positive(queries_per_language, "queries_per_language");
    if (languages.empty()) {
        throw ValidationError("languages", "at least one language is required");
    }
    if (dim < 2) {
        throw ValidationError("dim", "must be at least 2");
    }
    if (query_tokens > passage_tokens) {
        throw ValidationError("query_tokens", "cannot exceed passage_tokens");
    }
    if (queries_per_language > num_passages) {
        throw ValidationError("queries_per_language", "cannot exceed num_passages");
    }
    if (!(query_noise >= 0.0) || !std::isfinite(query_noise)) {
        throw ValidationError("query_noise", "must be finite and non-negative");
    }
    if (!(offset_scale >= 0.0) || !std::isfinite(offset_scale)) {
        throw ValidationError("offset_scale", "must be finite and non-negative");
    }
    if (!(topic_fraction >= 0.0 && topic_fraction <= 1.0)) {
        throw ValidationError("topic_fraction", "must lie in [0, 1]");
    }
}

namespace {

std::string
padded(const char* prefix, std::size_t value, int width) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, value);
    return buf;
}

int
digits(std::size_t n) {
    int d = 1;
    while (n >= 10) {
        n /= 10;
        ++d;
    }
    return d;
}

std::vector<double>
unit(std::vector<double> v) {
    double sq = 0.0;
    for (const double x : v) {
        sq += x * x;
    }
    if (sq > 0.0) {
        const double norm = std::sqrt(sq);
        for (double& x : v) {
            x /= norm;
        }
    }
    return v;
}

/// First `count` entries of a seeded partial Fisher-Yates shuffle of [0, n).
std::vector<std::size_t>
sample_without_replacement(std::mt19937_64& rng, std::size_t n, std::size_t count) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) {
        pool[i] = i;
    }
    for (std::size_t i = 0; i < count; ++i) {
        std::swap(pool[i], pool[i + random::index_below(rng, n - i)]);
    }
    pool.resize(count);
    return pool;
}

std::string
lower_code(const LanguageTag& tag) {
    std::string s = tag.code();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct Surface {
    std::string key;
    std::vector<double> direction;
};

}  // namespace

SyntheticWorld
generate_synthetic_world(const SyntheticWorldSpec& spec) {
    spec.validate();
    const LanguageSet& set = LanguageSet::defaults();
    std::vector<LanguageTag> langs;
    for (const auto& code : spec.languages) {
        langs.push_back(set.parse(code));
    }
    if (set.ordered(langs).size() != langs.size()) {
        throw ValidationError("languages", "duplicate language");
    }
    langs = set.ordered(std::move(langs));

    const encoder::HashEncoderConfig enc{spec.dim, spec.seed, true};
    std::map<LanguageTag, Surface> surfaces;
    for (const auto& t : langs) {
        const auto dir = encoder::language_direction(enc, t);
        surfaces.emplace(t, Surface{lower_code(t), {dir.values().begin(), dir.values().end()}});
    }
    for (const auto& [a, b] : spec.shared_surfaces) {
        const auto ta = set.parse(a);
        const auto tb = set.parse(b);
        if (!surfaces.contains(ta) || !surfaces.contains(tb)) {
            throw ValidationError("shared_surfaces", "'" + a + "," + b + "' names a language outside the world");
        }
        surfaces.at(tb) = surfaces.at(ta);
    }

    std::mt19937_64 rng(spec.seed);
    const int id_width = digits(spec.num_passages - 1);
    const int word_width = digits(spec.vocab_per_language - 1);
    auto word = [&](std::size_t w) { return padded("w", w, word_width); };

    std::vector<std::vector<std::size_t>> topics(spec.num_topics);
    for (auto& topic : topics) {
        for (std::size_t i = 0; i < spec.topic_vocab; ++i) {
            topic.push_back(random::index_below(rng, spec.vocab_per_language));
        }
    }

    SyntheticWorld world;
    world.store = encoder::EmbeddingStore(spec.dim);
    world.query_store = encoder::EmbeddingStore(spec.dim);
    std::vector<std::vector<std::size_t>> words(spec.num_passages);
    std::vector<std::vector<double>> theta(spec.num_passages);
    for (std::size_t p = 0; p < spec.num_passages; ++p) {
        const auto& topic = topics[random::index_below(rng, spec.num_topics)];
        for (std::size_t i = 0; i < spec.passage_tokens; ++i) {
            const bool topical = random::uniform01(rng) < spec.topic_fraction;
            words[p].push_back(topical ? topic[random::index_below(rng, topic.size())]
                                       : random::index_below(rng, spec.vocab_per_language));
        }
        const std::size_t answer_at = random::index_below(rng, spec.passage_tokens + 1);
        std::string text;
        for (std::size_t i = 0; i <= spec.passage_tokens; ++i) {
            if (!text.empty()) {
                text += ' ';
            }
            text += i == answer_at ? padded("ans", p, id_width) : word(words[p][i < answer_at ? i : i - 1]);
        }
        const auto e = encoder::encode_text(enc, text);
        theta[p].assign(e.values().begin(), e.values().end());
        world.corpus.emplace_back(padded("p", p, id_width), "", std::move(text));
        world.store.add(world.corpus.back().id(), e);
    }

    // One draw of a query about passage p in language t: its rendered text and vector.
    auto draw = [&](std::size_t p, const LanguageTag& t) {
        const Surface& surface = surfaces.at(t);
        std::string text;
        for (const std::size_t i : sample_without_replacement(rng, spec.passage_tokens, spec.query_tokens)) {
            if (!text.empty()) {
                text += ' ';
            }
            text += surface.key + ":" + word(words[p][i]);
        }
        const auto lexical = encoder::encode_text(enc, text);
        std::vector<double> d(spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i) {
            d[i] = surface.direction[i] + lexical[i];
        }
        d = unit(std::move(d));
        std::vector<double> v(spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i) {
            v[i] = theta[p][i] + spec.offset_scale * d[i];
        }
        v = unit(std::move(v));
        std::vector<float> out(spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i) {
            const double noise = spec.query_noise > 0.0 ? spec.query_noise * random::gaussian(rng) : 0.0;
            out[i] = static_cast<float>(v[i] + noise);
        }
        return std::make_pair(std::move(text), Embedding(std::move(out)));
    };

    for (std::size_t p = 0; p < spec.num_passages; ++p) {
        for (const auto& t : langs) {
            for (std::uint32_t i = 0; i < spec.samples_per_language; ++i) {
                auto [text, vec] = draw(p, t);
                GeneratedQuery q(world.corpus[p].id(), t, std::move(text), i);
                world.store.add(q.embedding_id(), std::move(vec));
                world.genq.add(std::move(q));
            }
        }
    }

    const int qid_width = digits(spec.queries_per_language - 1);
    for (const auto& t : langs) {
        const std::string lower = lower_code(t);
        const auto targets = sample_without_replacement(rng, spec.num_passages, spec.queries_per_language);
        for (std::size_t j = 0; j < targets.size(); ++j) {
            const std::size_t p = targets[j];
            auto [text, vec] = draw(p, t);
            const std::string qid = padded(("q-" + lower + "-").c_str(), j, qid_width);
            world.query_store.add(qid, std::move(vec));
            world.queries.emplace_back(qid, t, std::move(text), std::vector<std::string>{padded("ans", p, id_width)});
        }
    }
    return world;
}

Inputs
SyntheticWorld::inputs() const {
    Inputs in;
    in.corpus = corpus;
    in.genq = &genq;
    in.store = &store;
    in.queries = queries;
    in.query_store = &query_store;
    in.languages = &languages;
    return in;
}

}  // namespace xqg::experiments
