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
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles/recall_reference.hpp"
#include "xqg/eval.hpp"
#include "xqg/parallel.hpp"

using namespace xqg;
using namespace xqg::eval;

namespace {

const LanguageSet& langs = LanguageSet::defaults();

}  // namespace

TEST_CASE("paris hand trace") {
    const auto corpus = testing::paris_corpus();
    const auto queries = testing::paris_queries();
    const auto run = testing::paris_run();
    // 1500 + 100 tokens precede the answer, so it is token 1601.
    CHECK(recall_at_kilotokens(run, corpus, queries, 2000).average == 1.0);
    CHECK(recall_at_kilotokens(run, corpus, queries, 1601).average == 1.0);
    CHECK(recall_at_kilotokens(run, corpus, queries, 1600).average == 0.0);
    CHECK(recall_at_kilotokens(run, corpus, queries, 1550).average == 0.0);
    const auto report = recall_at_kilotokens(run, corpus, queries, 2000);
    CHECK(report.metric == "R@2kt");
    REQUIRE(report.per_language.size() == 1);
    CHECK(report.per_language[0].successes[0] == QuerySuccess{"q1", 1});
}

TEST_CASE("metric names") {
    CHECK(metric_name(2000) == "R@2kt");
    CHECK(metric_name(5000) == "R@5kt");
    CHECK(metric_name(1550) == "R@1550t");
}

TEST_CASE("empty run scores zero and unknown qids are rejected") {
    const auto corpus = testing::paris_corpus();
    const auto queries = testing::paris_queries();
    const std::vector<RankedList> empty;
    const auto report = recall_at_kilotokens(empty, corpus, queries, 2000);
    CHECK(report.average == 0.0);
    CHECK(report.per_language[0].successes[0].success == 0);

    const std::vector<RankedList> stray = {RankedList("zz", {{"p1", 1.0}})};
    CHECK_THROWS_AS(recall_at_kilotokens(stray, corpus, queries, 2000), NotFoundError);
    const std::vector<RankedList> twice = {RankedList("q1", {{"p1", 1.0}}), RankedList("q1", {{"p2", 1.0}})};
    CHECK_THROWS_AS(recall_at_kilotokens(twice, corpus, queries, 2000), ValidationError);
    const std::vector<RankedList> ghost = {RankedList("q1", {{"p9", 1.0}})};
    CHECK_THROWS_AS(recall_at_kilotokens(ghost, corpus, queries, 2000), NotFoundError);
}

TEST_CASE("answers match after NFKC, case folding and whitespace collapse") {
    const std::vector<Passage> corpus = {Passage("p1", "", "the  NEW\tYork times"), Passage("p2", "", "Ｔｏｋｙｏ tower")};
    const auto ja = langs.parse("Ja");
    const std::vector<EvalQuery> queries = {EvalQuery("a", ja, "q", {"new york"}), EvalQuery("b", ja, "q", {"tokyo"}),
                                            EvalQuery("c", ja, "q", {"kyoto", "TOWER"})};
    const std::vector<RankedList> run = {RankedList("a", {{"p1", 1.0}}), RankedList("b", {{"p2", 1.0}}),
                                         RankedList("c", {{"p2", 1.0}})};
    const auto report = recall_at_kilotokens(run, corpus, queries, 100);
    CHECK(report.average == 1.0);
}

TEST_CASE("a custom normalizer replaces the default") {
    const std::vector<Passage> corpus = {Passage("p1", "", "Paris")};
    const std::vector<EvalQuery> queries = {EvalQuery("q", langs.parse("Ja"), "q", {"paris"})};
    const std::vector<RankedList> run = {RankedList("q", {{"p1", 1.0}})};
    EvalOptions exact;
    exact.normalizer = [](std::string_view s) { return std::string(s); };
    CHECK(recall_at_kilotokens(run, corpus, queries, 10, exact).average == 0.0);
    CHECK(recall_at_kilotokens(run, corpus, queries, 10).average == 1.0);
}

TEST_CASE("per-language recall and average") {
    const std::vector<Passage> corpus = {Passage("p1", "", "alpha"), Passage("p2", "", "beta")};
    const std::vector<EvalQuery> queries = {
        EvalQuery("r1", langs.parse("Ru"), "q", {"alpha"}), EvalQuery("r2", langs.parse("Ru"), "q", {"beta"}),
        EvalQuery("j1", langs.parse("Ja"), "q", {"alpha"}), EvalQuery("j2", langs.parse("Ja"), "q", {"gamma"})};
    const std::vector<RankedList> run = {RankedList("r1", {{"p1", 1.0}}), RankedList("r2", {{"p2", 1.0}}),
                                         RankedList("j1", {{"p1", 1.0}}), RankedList("j2", {{"p2", 1.0}})};
    const auto report = recall_at_kilotokens(run, corpus, queries, 10);
    REQUIRE(report.per_language.size() == 2);
    CHECK(report.per_language[0].lang.code() == "Ja");
    CHECK(report.per_language[0].recall == 0.5);
    CHECK(report.find(langs.parse("Ru"))->recall == 1.0);
    CHECK(report.find(langs.parse("Ko")) == nullptr);
    CHECK(report.average == doctest::Approx(0.75));
}

TEST_CASE("randomized fixtures agree with the reference and are monotone in m") {
    std::mt19937_64 rng(2024);
    set_thread_count(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n_passages = 2 + rng() % 12;
        std::vector<Passage> corpus;
        for (std::size_t p = 0; p < n_passages; ++p) {
            std::string text;
            const std::size_t len = 1 + rng() % 900;
            for (std::size_t i = 0; i < len; ++i) {
                text += (i ? " " : "") + std::string("t") + std::to_string(rng() % 3000);
            }
            corpus.emplace_back("p" + std::to_string(p), "", text);
        }
        std::vector<EvalQuery> queries;
        std::vector<RankedList> run;
        for (int q = 0; q < 5; ++q) {
            const std::string qid = "q" + std::to_string(q);
            queries.emplace_back(qid, langs.parse(q % 2 ? "Ja" : "Fi"), "x",
                                 std::vector<std::string>{"T" + std::to_string(rng() % 3000)});
            if (rng() % 5 == 0) {
                continue;  // no ranking for this query
            }
            std::vector<std::size_t> order(n_passages);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<ScoredPassage> entries;
            for (std::size_t r = 0; r < order.size(); ++r) {
                entries.push_back({corpus[order[r]].id(), 100.0 - static_cast<double>(r)});
            }
            run.emplace_back(qid, entries);
        }
        const PassageLookup lookup(corpus);
        for (const std::size_t m : {1UL, 137UL, 2000UL}) {
            const auto report = recall_at_kilotokens(run, lookup, queries, m);
            for (const auto& lr : report.per_language) {
                for (const auto& s : lr.successes) {
                    int want = 0;
                    for (const auto& r : run) {
                        if (r.qid() != s.qid) {
                            continue;
                        }
                        std::vector<std::string> texts;
                        for (const auto& e : r.entries()) {
                            texts.push_back(corpus[std::stoul(e.passage_id.substr(1))].text());
                        }
                        const auto& q = *std::find_if(queries.begin(), queries.end(),
                                                      [&](const auto& x) { return x.qid() == s.qid; });
                        want = oracle::success_at(texts, q.answers(), m);
                    }
                    CHECK(s.success == want);
                }
            }
        }
        const auto r2 = recall_at_kilotokens(run, lookup, queries, 2000);
        const auto r5 = recall_at_kilotokens(run, lookup, queries, 5000);
        CHECK(r5.average >= r2.average);
        for (std::size_t l = 0; l < r2.per_language.size(); ++l) {
            for (std::size_t i = 0; i < r2.per_language[l].successes.size(); ++i) {
                CHECK(r5.per_language[l].successes[i].success >= r2.per_language[l].successes[i].success);
            }
        }
    }
    set_thread_count(0);
}
