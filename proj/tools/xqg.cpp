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

// xqg: command-line front end for encoding, augmentation, indexing, retrieval,
// evaluation and the scripted sweeps.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xqg/augment.hpp"
#include "xqg/encoder.hpp"
#include "xqg/eval.hpp"
#include "xqg/experiments.hpp"
#include "xqg/formats.hpp"
#include "xqg/index.hpp"
#include "xqg/parallel.hpp"
#include "xqg/report.hpp"

namespace fs = std::filesystem;
using namespace xqg;

namespace {

/// JSON config: top-level keys are global options, objects are subcommand sections.
class JsonConfig : public CLI::Config {
 public:
    std::string
    to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem>
    from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(input);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError("config", std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config", "top-level JSON value must be an object");
        }
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

 private:
    static std::string
    scalar(const nlohmann::json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        if (v.is_number() || v.is_null()) {
            return v.dump();
        }
        throw CLI::ConversionError("config", "nested arrays and objects are not option values: " + v.dump());
    }

    static void
    collect(const nlohmann::json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto sub = parents;
                sub.push_back(key);
                collect(value, sub, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

fs::path
require_file(const fs::path& path) {
    if (!fs::is_regular_file(path)) {
        throw Error(path.string() + ": no such file");
    }
    return path;
}

/// Writes then reads back, so a zero exit means the artifact on disk is valid.
void
save_embeddings(const encoder::EmbeddingStore& store, const fs::path& path) {
    formats::write_embeddings(store, path);
    if (!(formats::read_embeddings(path) == store)) {
        throw Error(path.string() + ": read-back does not match what was written");
    }
}

void
save_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        throw Error(path.string() + ": write failed");
    }
}

encoder::EmbeddingStore
load_store(const fs::path& primary, const std::optional<fs::path>& extra) {
    auto store = formats::read_embeddings(require_file(primary));
    if (extra) {
        store.merge(formats::read_embeddings(require_file(*extra)));
    }
    return store;
}

struct Common {
    std::optional<std::size_t> threads;
};

struct EncodeArgs {
    fs::path input;
    fs::path out;
    std::size_t dim = 64;
    std::uint64_t seed = 0;
    std::string kind = "passage";
    bool normalize = false;
};

// CLI11 skips validators on environment values, so XQG_THREADS is read here.
std::optional<std::size_t>
threads_from_env() {
    const char* raw = std::getenv("XQG_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    std::size_t n = 0;
    const char* end = raw + std::strlen(raw);
    auto [p, ec] = std::from_chars(raw, end, n);
    if (ec != std::errc() || p != end) {
        throw ValidationError("XQG_THREADS", "expected a non-negative integer, got '" + std::string(raw) + "'");
    }
    return n;
}

int
cmd_encode(const EncodeArgs& a) {
    const encoder::HashEncoderConfig cfg{a.dim, a.seed, true};
    cfg.validate();
    encoder::EmbeddingStore store(a.dim);
    if (a.kind == "passage") {
        for (const auto& p : formats::read_corpus(require_file(a.input))) {
            const std::string text = p.title().empty() ? p.text() : p.title() + " " + p.text();
            store.add(p.id(), encoder::encode_text(cfg, text));
        }
    } else if (a.kind == "genq") {
        const auto genq = formats::read_generated_queries(require_file(a.input));
        for (const auto* q : genq.all()) {
            store.add(q->embedding_id(), encoder::encode_text(cfg, q->text()));
        }
    } else {
        for (const auto& q : formats::read_eval_queries(require_file(a.input))) {
            store.add(q.qid(), encoder::encode_text(cfg, q.text()));
        }
    }
    if (a.normalize) {
        store = encoder::normalized(store);
    }
    save_embeddings(store, a.out);
    std::cout << "encoded " << store.size() << " " << a.kind << " texts (dim " << a.dim << ") -> " << a.out.string()
              << "\n";
    return 0;
}

struct AugmentArgs {
    fs::path corpus;
    fs::path genq;
    fs::path passage_store;
    std::optional<fs::path> genq_store;
    double alpha = 0.01;
    std::string langs;
    std::size_t n = 5;
    bool renormalize = false;
    fs::path out;
};

int
cmd_augment(const AugmentArgs& a) {
    const auto& set = LanguageSet::defaults();
    const auto langs = set.parse_list(a.langs);
    const AugmentationConfig cfg(a.alpha, langs, a.n, a.renormalize);
    const auto corpus = formats::read_corpus(require_file(a.corpus));
    const auto genq = formats::read_generated_queries(require_file(a.genq), formats::id_set(corpus));
    const auto store = load_store(a.passage_store, a.genq_store);
    const auto augmented = augment::augment_corpus(corpus, store, genq, cfg);
    if (langs.empty() || a.n == 0) {
        std::cerr << "warning: no generated queries selected; " << augmented.passages_without_queries
                  << " passages only scaled by (1 - alpha)\n";
    } else if (augmented.passages_without_queries > 0) {
        std::cerr << "warning: " << augmented.passages_without_queries << " passages had no generated queries\n";
    }
    save_embeddings(augmented.embeddings, a.out);
    std::cout << "augmented " << augmented.embeddings.size() << " passages (alpha " << a.alpha << ", n " << a.n
              << ") -> " << a.out.string() << "\n";
    return 0;
}

struct IndexArgs {
    fs::path store;
    fs::path out;
    std::string variant = "exact";
    index::IvfOptions ivf;
};

int
cmd_index(const IndexArgs& a) {
    const auto store = formats::read_embeddings(require_file(a.store));
    const auto idx = a.variant == "ivf" ? index::build_ivf(store, a.ivf) : index::build_exact(store);
    index::write_index(idx, a.out);
    if (!(index::read_index(a.out) == idx)) {
        throw Error(a.out.string() + ": read-back does not match what was written");
    }
    std::cout << "indexed " << idx.size() << " vectors (" << a.variant << ") -> " << a.out.string() << "\n";
    return 0;
}

struct SearchArgs {
    fs::path index;
    fs::path queries;
    std::size_t k = 100;
    std::optional<std::size_t> nprobe;
    std::string tag = "xqg";
    fs::path out;
};

int
cmd_search(const SearchArgs& a) {
    const auto idx = index::read_index(require_file(a.index));
    const auto queries = formats::read_embeddings(require_file(a.queries));
    const auto run = index::search_all(idx, queries, queries.ids(), a.k, a.nprobe);
    formats::write_run(run, a.tag, a.out);
    formats::read_run(a.out);
    std::size_t results = 0;
    for (const auto& r : run) {
        results += r.size();
    }
    std::cout << "searched " << run.size() << " queries, " << results << " results -> " << a.out.string() << "\n";
    return 0;
}

struct EvalArgs {
    fs::path run;
    std::optional<fs::path> baseline;
    fs::path corpus;
    fs::path queries;
    std::vector<std::size_t> m = experiments::kDefaultMTokens;
    std::optional<fs::path> out;
};

int
cmd_eval(const EvalArgs& a) {
    const auto corpus = formats::read_corpus(require_file(a.corpus));
    const auto queries = formats::read_eval_queries(require_file(a.queries));
    const auto run = formats::read_run(require_file(a.run));
    const eval::PassageLookup lookup(corpus);
    std::optional<std::vector<RankedList>> base_run;
    if (a.baseline) {
        base_run = formats::read_run(require_file(*a.baseline));
    }

    auto metrics = nlohmann::ordered_json::object();
    std::vector<eval::MetricReport> reports;
    std::vector<eval::MetricReport> base_reports;
    std::vector<eval::SignificanceReport> sig;
    for (const auto m : a.m) {
        reports.push_back(eval::recall_at_kilotokens(run, lookup, queries, m));
        metrics[reports.back().metric] = eval::to_json(reports.back());
    }
    nlohmann::ordered_json j;
    j["metrics"] = std::move(metrics);
    if (base_run) {
        auto js = nlohmann::ordered_json::object();
        auto jb = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < a.m.size(); ++i) {
            base_reports.push_back(eval::recall_at_kilotokens(*base_run, lookup, queries, a.m[i]));
            const std::size_t family = reports[i].per_language.size();
            sig.push_back(eval::compare_reports(reports[i], base_reports[i], family == 0 ? 1 : family));
            jb[reports[i].metric] = eval::to_json(base_reports[i], false);
            js[reports[i].metric] = eval::to_json(sig.back());
        }
        j["baseline"] = std::move(jb);
        j["significance"] = std::move(js);
    }
    if (a.out) {
        save_text(*a.out, j.dump(2) + "\n");
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::vector<eval::TableRow> rows;
        if (base_run) {
            rows.push_back({"baseline", &base_reports[i], nullptr});
        }
        rows.push_back({a.run.filename().string(), &reports[i], base_run ? &sig[i] : nullptr});
        std::cout << reports[i].metric << "\n" << eval::format_table(rows);
    }
    return 0;
}

struct WorldArgs {
    std::optional<fs::path> world;
    fs::path corpus;
    fs::path genq;
    fs::path store;
    fs::path queries;
    fs::path query_store;
};

/// Loaded inputs for sweep and matrix; `inputs()` points into this object.
struct LoadedWorld {
    std::vector<Passage> corpus;
    GeneratedQuerySet genq;
    encoder::EmbeddingStore store{1};
    std::vector<EvalQuery> queries;
    encoder::EmbeddingStore query_store{1};

    explicit LoadedWorld(const WorldArgs& a) {
        auto pick = [&](const fs::path& given, const char* name) {
            if (!given.empty()) {
                return given;
            }
            if (!a.world) {
                throw Error(std::string("--") + name + " or --world is required");
            }
            return *a.world / synthetic_name(name);
        };
        corpus = formats::read_corpus(require_file(pick(a.corpus, "corpus")));
        genq = formats::read_generated_queries(require_file(pick(a.genq, "genq")), formats::id_set(corpus));
        store = formats::read_embeddings(require_file(pick(a.store, "store")));
        queries = formats::read_eval_queries(require_file(pick(a.queries, "queries")));
        query_store = formats::read_embeddings(require_file(pick(a.query_store, "query-store")));
    }

    static std::string
    synthetic_name(std::string_view option) {
        if (option == "corpus") {
            return "corpus.jsonl";
        }
        if (option == "genq") {
            return "genq.jsonl";
        }
        if (option == "store") {
            return "store.xqge";
        }
        if (option == "queries") {
            return "eval_queries.jsonl";
        }
        return "query_store.xqge";
    }

    experiments::Inputs
    inputs() const {
        experiments::Inputs in;
        in.corpus = corpus;
        in.genq = &genq;
        in.store = &store;
        in.queries = queries;
        in.query_store = &query_store;
        return in;
    }
};

struct SweepArgs {
    WorldArgs world;
    std::string variable = "alpha";
    std::vector<std::string> grid;
    double alpha = 0.01;
    std::optional<std::string> langs;
    std::size_t n = 5;
    bool renormalize = false;
    std::vector<std::size_t> m = experiments::kDefaultMTokens;
    std::size_t k = experiments::kDefaultK;
    fs::path out_dir = ".";
};

std::vector<double>
parse_numbers(const std::vector<std::string>& values, const char* field) {
    std::vector<double> out;
    for (const auto& v : values) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != v.size()) {
            throw ValidationError(field, "'" + v + "' is not a number");
        }
        out.push_back(x);
    }
    return out;
}

std::vector<std::string>
split(const std::vector<std::string>& entries, char sep) {
    std::vector<std::string> out;
    for (const auto& entry : entries) {
        std::size_t start = 0;
        while (start <= entry.size()) {
            const std::size_t end = std::min(entry.find(sep, start), entry.size());
            out.push_back(entry.substr(start, end - start));
            start = end + 1;
        }
    }
    return out;
}

int
cmd_sweep(const SweepArgs& a) {
    const auto& set = LanguageSet::defaults();
    experiments::SweepSpec spec;
    spec.variable = experiments::parse_sweep_variable(a.variable);
    spec.m_tokens_list = a.m;
    spec.k = a.k;
    if (spec.variable == experiments::SweepVariable::SourceLanguage) {
        // Sets are separated by ';' and "none" is the empty set.
        for (const auto& one : split(a.grid, ';')) {
            spec.language_grid.push_back(one == "none" ? std::vector<LanguageTag>{} : set.parse_list(one));
        }
    } else {
        spec.grid = parse_numbers(split(a.grid, ','), "grid");
    }
    spec.validate();
    const LoadedWorld world(a.world);
    // Without --langs every generated-query language takes part.
    auto langs = a.langs ? set.parse_list(*a.langs) : set.ordered(world.genq.languages());
    spec.fixed = AugmentationConfig(a.alpha, std::move(langs), a.n, a.renormalize);
    spec.validate();
    const auto result = experiments::run_sweep(spec, world.inputs());
    const auto path = experiments::write_sweep(result, a.out_dir);
    std::cout << "sweep over " << experiments::to_string(spec.variable) << ": " << result.rows.size() << " rows -> "
              << path.string() << "\n";
    for (const auto& row : result.rows) {
        std::cout << "  " << row.label;
        for (const auto& r : row.reports) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "  %s %.4f", r.metric.c_str(), r.average);
            std::cout << buf;
        }
        std::cout << "\n";
    }
    return 0;
}

struct MatrixArgs {
    WorldArgs world;
    std::vector<std::string> alpha_grid = {"0", "0.01", "0.02"};
    std::size_t n = 5;
    bool renormalize = false;
    std::vector<std::size_t> m = {2000};
    std::size_t k = experiments::kDefaultK;
    fs::path out_dir = ".";
};

int
cmd_matrix(const MatrixArgs& a) {
    experiments::MatrixSpec spec;
    spec.alpha_grid = parse_numbers(split(a.alpha_grid, ','), "alpha-grid");
    spec.fixed = AugmentationConfig(0.0, {}, a.n, a.renormalize);
    spec.m_tokens_list = a.m;
    spec.k = a.k;
    const LoadedWorld world(a.world);
    const auto matrix = experiments::cross_language_matrix(spec, world.inputs());
    const auto files = experiments::write_matrix_csv(matrix, a.out_dir);
    save_text(a.out_dir / "matrix.json", experiments::to_json(matrix).dump(2) + "\n");
    std::cout << "matrix " << matrix.targets.size() << "x" << matrix.sources.size() << ": " << files.size()
              << " csv files -> " << a.out_dir.string() << "\n";
    return 0;
}

struct SynthArgs {
    experiments::SyntheticWorldSpec spec;
    std::vector<std::string> shared;
    fs::path out_dir;
};

int
cmd_synth(SynthArgs a) {
    for (const auto& pair : a.shared) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) {
            throw ValidationError("shared", "'" + pair + "' is not of the form A:B");
        }
        a.spec.shared_surfaces.emplace_back(pair.substr(0, colon), pair.substr(colon + 1));
    }
    const auto world = experiments::generate_synthetic_world(a.spec);
    fs::create_directories(a.out_dir);
    formats::write_corpus(world.corpus, a.out_dir / "corpus.jsonl");
    formats::write_generated_queries(world.genq, a.out_dir / "genq.jsonl");
    formats::write_eval_queries(world.queries, a.out_dir / "eval_queries.jsonl");
    save_embeddings(world.store, a.out_dir / "store.xqge");
    save_embeddings(world.query_store, a.out_dir / "query_store.xqge");
    std::cout << "synthetic world: " << world.corpus.size() << " passages, " << world.genq.size()
              << " generated queries, " << world.queries.size() << " eval queries -> " << a.out_dir.string() << "\n";
    return 0;
}

void
add_world_options(CLI::App* sub, WorldArgs& w) {
    sub->add_option("--world", w.world, "Directory written by `xqg synth` (default file names)");
    sub->add_option("--corpus", w.corpus, "corpus.jsonl");
    sub->add_option("--genq", w.genq, "genq.jsonl");
    sub->add_option("--store", w.store, "Passage and generated-query vectors (.xqge)");
    sub->add_option("--queries", w.queries, "eval_queries.jsonl");
    sub->add_option("--query-store", w.query_store, "Eval-query vectors keyed by qid (.xqge)");
}

}  // namespace

int
main(int argc, char** argv) {
    CLI::App app{"xqg: dense retrieval with generated-query augmentation"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "xqg.json", "JSON config; command-line flags take precedence");
    app.allow_config_extras(false);

    Common common;
    app.add_option("--threads", common.threads, "Worker threads (default: XQG_THREADS, else logical cores)")
        ->check(CLI::NonNegativeNumber);

    EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "Hash-encode a corpus, generated queries or eval queries");
    encode->add_option("--input", enc.input, "corpus.jsonl, genq.jsonl or eval_queries.jsonl")->required();
    encode->add_option("--out", enc.out, "Output .xqge")->required();
    encode->add_option("--dim", enc.dim, "Embedding dimension")->check(CLI::Range(2, 65536));
    encode->add_option("--seed", enc.seed, "Hash seed");
    encode->add_option("--kind", enc.kind, "Input kind")->check(CLI::IsMember({"passage", "genq", "query"}));
    encode->add_flag("--normalize", enc.normalize, "L2-normalize vectors (cosine scoring)");

    AugmentArgs aug;
    auto* augment = app.add_subcommand("augment", "Blend passage vectors with generated-query vectors");
    augment->add_option("--corpus", aug.corpus)->required();
    augment->add_option("--genq", aug.genq)->required();
    augment->add_option("--passage-store", aug.passage_store)->required();
    augment->add_option("--genq-store", aug.genq_store, "Defaults to looking generated queries up in --passage-store");
    augment->add_option("--alpha", aug.alpha, "Augmentation ratio")->check(CLI::Range(0.0, 1.0));
    augment->add_option("--langs", aug.langs, "Comma-separated source languages");
    augment->add_option("--n", aug.n, "Generated queries per language");
    augment->add_flag("--renormalize", aug.renormalize, "L2-normalize augmented vectors");
    augment->add_option("--out", aug.out)->required();

    IndexArgs idx;
    auto* index = app.add_subcommand("index", "Build an exact or IVF index");
    index->add_option("--store", idx.store)->required();
    index->add_option("--out", idx.out)->required();
    index->add_option("--variant", idx.variant)->check(CLI::IsMember({"exact", "ivf"}));
    index->add_option("--nlist", idx.ivf.nlist)->check(CLI::PositiveNumber);
    index->add_option("--iters", idx.ivf.kmeans_iters);
    index->add_option("--seed", idx.ivf.seed, "k-means seed");
    index->add_option("--nprobe", idx.ivf.default_nprobe, "Default probe count")->check(CLI::PositiveNumber);

    SearchArgs srch;
    auto* search = app.add_subcommand("search", "Retrieve the top k passages for every query vector");
    search->add_option("--index", srch.index)->required();
    search->add_option("--queries", srch.queries, "Query vectors (.xqge), ids are qids")->required();
    search->add_option("--k", srch.k)->check(CLI::PositiveNumber);
    search->add_option("--nprobe", srch.nprobe)->check(CLI::PositiveNumber);
    search->add_option("--tag", srch.tag, "Run tag");
    search->add_option("--out", srch.out, "Run file")->required();

    EvalArgs ev;
    auto* evaluate = app.add_subcommand("eval", "Recall at m tokens for a run");
    evaluate->add_option("--run", ev.run)->required();
    evaluate->add_option("--baseline-run", ev.baseline, "Adds paired t-tests against this run");
    evaluate->add_option("--corpus", ev.corpus)->required();
    evaluate->add_option("--queries", ev.queries, "eval_queries.jsonl")->required();
    evaluate->add_option("--m", ev.m, "Token budgets")->delimiter(',')->check(CLI::PositiveNumber);
    evaluate->add_option("--out", ev.out, "JSON report");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Sweep alpha, n or the source languages");
    add_world_options(sweep, sw.world);
    sweep->add_option("--variable", sw.variable)->check(CLI::IsMember({"alpha", "n_queries", "source_language"}));
    sweep->add_option("--grid", sw.grid, "Comma-separated values; for source_language, sets like \"none;Ja;Ja,Ko\"")
        ->required();
    sweep->add_option("--alpha", sw.alpha)->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--langs", sw.langs, "Source languages (default: all generated-query languages)");
    sweep->add_option("--n", sw.n);
    sweep->add_flag("--renormalize", sw.renormalize);
    sweep->add_option("--m", sw.m)->delimiter(',')->check(CLI::PositiveNumber);
    sweep->add_option("--k", sw.k)->check(CLI::PositiveNumber);
    sweep->add_option("--out-dir", sw.out_dir);

    MatrixArgs mx;
    auto* matrix = app.add_subcommand("matrix", "Source-by-target language matrix over an alpha grid");
    add_world_options(matrix, mx.world);
    matrix->add_option("--alpha-grid", mx.alpha_grid, "Comma-separated alphas, including 0");
    matrix->add_option("--n", mx.n);
    matrix->add_flag("--renormalize", mx.renormalize);
    matrix->add_option("--m", mx.m)->delimiter(',')->check(CLI::PositiveNumber);
    matrix->add_option("--k", mx.k)->check(CLI::PositiveNumber);
    matrix->add_option("--out-dir", mx.out_dir);

    SynthArgs sy;
    std::string synth_langs = "Ar,Bn,Fi";
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic cross-lingual world");
    synth->add_option("--out-dir", sy.out_dir)->required();
    synth->add_option("--passages", sy.spec.num_passages)->check(CLI::PositiveNumber);
    synth->add_option("--vocab", sy.spec.vocab_per_language)->check(CLI::PositiveNumber);
    synth->add_option("--langs", synth_langs);
    synth->add_option("--noise", sy.spec.query_noise)->check(CLI::NonNegativeNumber);
    synth->add_option("--offset", sy.spec.offset_scale)->check(CLI::NonNegativeNumber);
    synth->add_option("--seed", sy.spec.seed);
    synth->add_option("--dim", sy.spec.dim)->check(CLI::Range(2, 65536));
    synth->add_option("--samples", sy.spec.samples_per_language)->check(CLI::PositiveNumber);
    synth->add_option("--queries-per-language", sy.spec.queries_per_language)->check(CLI::PositiveNumber);
    synth->add_option("--shared", sy.shared, "Language pairs A:B where B reuses A's surface form")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ConfigError& e) {
        std::string msg = e.what();
        const std::string extras = "INI was not able to parse ";
        if (msg.rfind(extras, 0) == 0) {
            msg = "unknown key '" + msg.substr(extras.size()) + "'";
        }
        std::cerr << "xqg: error: config: " << msg << "\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!common.threads) {
            common.threads = threads_from_env();
        }
        if (common.threads) {
            set_thread_count(*common.threads);
        }
        if (app.got_subcommand(encode)) {
            return cmd_encode(enc);
        }
        if (app.got_subcommand(augment)) {
            return cmd_augment(aug);
        }
        if (app.got_subcommand(index)) {
            return cmd_index(idx);
        }
        if (app.got_subcommand(search)) {
            return cmd_search(srch);
        }
        if (app.got_subcommand(evaluate)) {
            return cmd_eval(ev);
        }
        if (app.got_subcommand(sweep)) {
            return cmd_sweep(sw);
        }
        if (app.got_subcommand(matrix)) {
            return cmd_matrix(mx);
        }
        if (app.got_subcommand(synth)) {
            sy.spec.languages.clear();
            for (const auto& t : LanguageSet::defaults().parse_list(synth_langs)) {
                sy.spec.languages.push_back(t.code());
            }
            return cmd_synth(sy);
        }
    } catch (const std::exception& e) {
        std::cerr << "xqg: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
