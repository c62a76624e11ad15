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

#include <filesystem>

#include <json.hpp>

#include "cli_runner.hpp"
#include "fixtures.hpp"
#include "support.hpp"
#include "xqg/augment.hpp"
#include "xqg/formats.hpp"

using namespace xqg;
using testing::quote;
using testing::read_file;
using testing::run_cli;
using testing::TempDir;

namespace {

const LanguageSet& langs = LanguageSet::defaults();

void
write_small_corpus(const std::filesystem::path& path) {
    testing::write_file(path,
                        "{\"id\":\"p1\",\"title\":\"Paris\",\"text\":\"Paris is the capital of France\"}\n"
                        "{\"id\":\"p2\",\"text\":\"Tokyo is the capital of Japan\"}\n"
                        "{\"id\":\"p3\",\"text\":\"Moscow is the capital of Russia\"}\n");
}

void
write_small_genq(const std::filesystem::path& path) {
    std::string lines;
    for (const char* pid : {"p1", "p2", "p3"}) {
        for (const char* lang : {"Ja", "Ru"}) {
            for (int i = 0; i < 2; ++i) {
                lines += std::string("{\"passage_id\":\"") + pid + "\",\"lang\":\"" + lang + "\",\"query\":\"" + lang +
                         " question " + std::to_string(i) + " about " + pid + "\",\"sample_index\":" +
                         std::to_string(i) + "}\n";
            }
        }
    }
    testing::write_file(path, lines);
}

}  // namespace

TEST_CASE("encode is deterministic") {
    TempDir dir("cli-encode");
    write_small_corpus(dir / "c.jsonl");
    const std::string args = "encode --input " + quote(dir / "c.jsonl") + " --dim 32 --seed 5 --out ";
    REQUIRE(run_cli(args + quote(dir / "a.xqge")).code == 0);
    REQUIRE(run_cli(args + quote(dir / "b.xqge")).code == 0);
    CHECK(read_file(dir / "a.xqge") == read_file(dir / "b.xqge"));
    const auto store = formats::read_embeddings(dir / "a.xqge");
    CHECK(store.ids() == std::vector<std::string>{"p1", "p2", "p3"});
    CHECK(store.dim() == 32);
}

TEST_CASE("encode errors") {
    TempDir dir("cli-encode-err");
    const auto missing = run_cli("encode --input " + quote(dir / "nope.jsonl") + " --out " + quote(dir / "o.xqge"));
    CHECK(missing.code == 1);
    CHECK(missing.output.find("nope.jsonl") != std::string::npos);

    const auto zero = run_cli("encode --input " + quote(dir / "nope.jsonl") + " --dim 0 --out " + quote(dir / "o.xqge"));
    CHECK(zero.code == 1);
    CHECK(zero.output.find("--dim") != std::string::npos);
    // Rejected before the input is even looked at.
    CHECK(zero.output.find("nope.jsonl") == std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "o.xqge"));

    CHECK(run_cli("encode --input x --out y --kind bogus").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("augment through the CLI matches the library") {
    TempDir dir("cli-augment");
    write_small_corpus(dir / "c.jsonl");
    write_small_genq(dir / "g.jsonl");
    REQUIRE(run_cli("encode --input " + quote(dir / "c.jsonl") + " --out " + quote(dir / "p.xqge")).code == 0);
    REQUIRE(run_cli("encode --kind genq --input " + quote(dir / "g.jsonl") + " --out " + quote(dir / "g.xqge")).code ==
            0);
    const std::string common = "augment --corpus " + quote(dir / "c.jsonl") + " --genq " + quote(dir / "g.jsonl") +
                               " --passage-store " + quote(dir / "p.xqge") + " --genq-store " + quote(dir / "g.xqge");

    REQUIRE(run_cli(common + " --alpha 0.02 --langs Ja,Ru --n 2 --out " + quote(dir / "a.xqge")).code == 0);
    const auto corpus = formats::read_corpus(dir / "c.jsonl");
    const auto genq = formats::read_generated_queries(dir / "g.jsonl");
    auto store = formats::read_embeddings(dir / "p.xqge");
    store.merge(formats::read_embeddings(dir / "g.xqge"));
    const auto lib = augment::augment_corpus(corpus, store, genq,
                                             AugmentationConfig(0.02, {langs.parse("Ja"), langs.parse("Ru")}, 2));
    CHECK(formats::read_embeddings(dir / "a.xqge") == lib.embeddings);

    REQUIRE(run_cli(common + " --alpha 0 --langs Ja,Ru --n 2 --out " + quote(dir / "zero.xqge")).code == 0);
    CHECK(formats::read_embeddings(dir / "zero.xqge") == formats::read_embeddings(dir / "p.xqge"));

    const auto empty = run_cli(common + " --alpha 0.1 --langs \"\" --out " + quote(dir / "e.xqge"));
    CHECK(empty.code == 0);
    CHECK(empty.output.find("warning") != std::string::npos);
    CHECK(empty.output.find(" 3 passages") != std::string::npos);

    const auto too_many = run_cli(common + " --alpha 0.1 --langs Ja --n 3 --out " + quote(dir / "x.xqge"));
    CHECK(too_many.code == 1);
    CHECK(too_many.output.find("p1") != std::string::npos);
    CHECK(run_cli(common + " --alpha 1.5 --out " + quote(dir / "x.xqge")).code == 1);
}

TEST_CASE("index, search and eval on the paris fixture") {
    TempDir dir("cli-paris");
    formats::write_corpus(testing::paris_corpus(), dir / "c.jsonl");
    formats::write_eval_queries(testing::paris_queries(), dir / "q.jsonl");
    encoder::EmbeddingStore passages(2);
    passages.add("p1", Embedding({1.0F, 0.0F}));
    passages.add("p2", Embedding({0.5F, 0.5F}));
    formats::write_embeddings(passages, dir / "p.xqge");
    encoder::EmbeddingStore queries(2);
    queries.add("q1", Embedding({1.0F, 0.1F}));
    formats::write_embeddings(queries, dir / "qv.xqge");

    REQUIRE(run_cli("index --store " + quote(dir / "p.xqge") + " --out " + quote(dir / "i.xqgi")).code == 0);
    REQUIRE(run_cli("search --index " + quote(dir / "i.xqgi") + " --queries " + quote(dir / "qv.xqge") +
                    " --k 3 --out " + quote(dir / "r.run"))
                .code == 0);
    const auto run = formats::read_run(dir / "r.run");
    REQUIRE(run.size() == 1);
    CHECK(run[0].size() == 2);
    CHECK(run[0].entries()[0].passage_id == "p1");

    const auto ev = run_cli("eval --run " + quote(dir / "r.run") + " --corpus " + quote(dir / "c.jsonl") +
                            " --queries " + quote(dir / "q.jsonl") + " --m 2000,1550 --out " + quote(dir / "rep.json"));
    REQUIRE(ev.code == 0);
    const auto j = nlohmann::json::parse(read_file(dir / "rep.json"));
    CHECK(j["metrics"]["R@2kt"]["per_language"]["Ja"]["successes"]["q1"] == 1);
    CHECK(j["metrics"]["R@1550t"]["per_language"]["Ja"]["successes"]["q1"] == 0);
    CHECK(ev.output.find("100.0") != std::string::npos);

    const auto with_base = run_cli("eval --run " + quote(dir / "r.run") + " --baseline-run " + quote(dir / "r.run") +
                                   " --corpus " + quote(dir / "c.jsonl") + " --queries " + quote(dir / "q.jsonl") +
                                   " --out " + quote(dir / "rep2.json"));
    CHECK(with_base.code == 0);
    CHECK(nlohmann::json::parse(read_file(dir / "rep2.json"))["significance"]["R@2kt"][0]["p_raw"] == 1.0);

    REQUIRE(run_cli("index --variant ivf --nlist 2 --nprobe 2 --store " + quote(dir / "p.xqge") + " --out " +
                    quote(dir / "v.xqgi"))
                .code == 0);
    CHECK(run_cli("search --index " + quote(dir / "v.xqgi") + " --queries " + quote(dir / "qv.xqge") +
                  " --nprobe 3 --out " + quote(dir / "r2.run"))
              .code == 1);
    CHECK(run_cli("index --variant ivf --nlist 3 --store " + quote(dir / "p.xqge") + " --out " + quote(dir / "w.xqgi"))
              .code == 1);
}

TEST_CASE("synth, sweep and matrix") {
    TempDir dir("cli-sweep");
    const auto synth = run_cli("synth --passages 120 --queries-per-language 20 --langs Ja,Ru --out-dir " +
                               quote(dir / "w"));
    REQUIRE(synth.code == 0);
    const auto sweep = run_cli("sweep --world " + quote(dir / "w") + " --variable alpha --grid 0,0.01,0.02 --out-dir " +
                               quote(dir / "s"));
    REQUIRE(sweep.code == 0);
    const auto j = nlohmann::json::parse(read_file(dir / "s" / "sweep_alpha.json"));
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][1]["languages"] == nlohmann::json::array({"Ja", "Ru"}));

    const auto langs_sweep = run_cli("sweep --world " + quote(dir / "w") +
                                     " --variable source_language --grid 'none;Ja;Ja,Ru' --m 2000 --out-dir " +
                                     quote(dir / "s"));
    REQUIRE(langs_sweep.code == 0);
    const auto jl = nlohmann::json::parse(read_file(dir / "s" / "sweep_source_language.json"));
    CHECK(jl["rows"].size() == 3);
    CHECK(jl["rows"][2]["label"] == "Ja,Ru");

    CHECK(run_cli("sweep --world " + quote(dir / "w") + " --grid 0.01,0.02").code == 1);
    CHECK(run_cli("sweep --world " + quote(dir / "w") + " --grid 0,x").code == 1);

    REQUIRE(run_cli("matrix --world " + quote(dir / "w") + " --alpha-grid 0,0.02 --out-dir " + quote(dir / "m")).code ==
            0);
    CHECK(std::filesystem::exists(dir / "m" / "matrix_r2kt_alpha0.02.csv"));
    CHECK(std::filesystem::exists(dir / "m" / "matrix.json"));
}

TEST_CASE("config file, flag precedence and threads") {
    TempDir dir("cli-config");
    write_small_corpus(dir / "c.jsonl");
    testing::write_file(dir / "xqg.json", "{\"threads\": 2, \"encode\": {\"dim\": 16, \"seed\": 3}}");
    REQUIRE(run_cli("--config " + quote(dir / "xqg.json") + " encode --input " + quote(dir / "c.jsonl") + " --out " +
                    quote(dir / "a.xqge"))
                .code == 0);
    CHECK(formats::read_embeddings(dir / "a.xqge").dim() == 16);
    REQUIRE(run_cli("--config " + quote(dir / "xqg.json") + " encode --dim 8 --input " + quote(dir / "c.jsonl") +
                    " --out " + quote(dir / "b.xqge"))
                .code == 0);
    CHECK(formats::read_embeddings(dir / "b.xqge").dim() == 8);

    testing::write_file(dir / "bad.json", "{\"encode\": {\"dimension\": 16}}");
    const auto bad = run_cli("--config " + quote(dir / "bad.json") + " encode --input " + quote(dir / "c.jsonl") +
                             " --out " + quote(dir / "c.xqge"));
    CHECK(bad.code == 1);
    CHECK(bad.output.find("dimension") != std::string::npos);
    testing::write_file(dir / "bad2.json", "{\"encode\": {\"dim\": 0}}");
    CHECK(run_cli("--config " + quote(dir / "bad2.json") + " encode --input " + quote(dir / "c.jsonl") + " --out " +
                  quote(dir / "c.xqge"))
              .code == 1);
    testing::write_file(dir / "bad3.json", "[1, 2]");
    CHECK(run_cli("--config " + quote(dir / "bad3.json") + " encode --input " + quote(dir / "c.jsonl") + " --out " +
                  quote(dir / "c.xqge"))
              .code == 1);

    CHECK(run_cli("encode --input " + quote(dir / "c.jsonl") + " --out " + quote(dir / "t.xqge"), "XQG_THREADS=3")
              .code == 0);
    CHECK(run_cli("encode --input " + quote(dir / "c.jsonl") + " --out " + quote(dir / "t.xqge"), "XQG_THREADS=abc")
              .code == 1);
    CHECK(run_cli("--threads -1 encode --input " + quote(dir / "c.jsonl") + " --out " + quote(dir / "t.xqge")).code ==
          1);
}
