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

#include "xqg/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "xqg/binary.hpp"

namespace xqg::formats {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::ifstream
open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) {
        throw FormatError(path.string() + ": cannot open for reading");
    }
    return in;
}

std::ofstream
open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out | std::ios::trunc) {
    std::ofstream out(path, mode);
    if (!out) {
        throw FormatError(path.string() + ": cannot open for writing");
    }
    return out;
}

void
finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw FormatError(path.string() + ": write failed");
    }
}

/// Iterates non-empty lines, handing each parsed JSON object and its line number to `fn`.
/// Any exception from `fn` is rethrown as FormatError prefixed with path and line.
template <typename Fn>
void
for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
    auto in = open_in(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string where = path.string() + ": line " + std::to_string(line_no) + ": ";
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw FormatError(where + "malformed JSON (" + e.what() + ")");
        }
        if (!obj.is_object()) {
            throw FormatError(where + "expected a JSON object");
        }
        try {
            fn(obj, line_no);
        } catch (const FormatError& e) {
            throw FormatError(where + e.what());
        } catch (const Error& e) {
            throw FormatError(where + e.what());
        } catch (const json::exception& e) {
            throw FormatError(where + e.what());
        }
    }
}

const json&
require(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        throw FormatError(std::string("missing field ") + field);
    }
    return *it;
}

std::string
require_string(const json& obj, const char* field) {
    const json& v = require(obj, field);
    if (!v.is_string()) {
        throw FormatError(std::string("field ") + field + " must be a string");
    }
    return v.get<std::string>();
}

void
write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    auto out = open_out(path);
    for (const auto& l : lines) {
        out << l << '\n';
    }
    finish(out, path);
}

}  // namespace

// ---- corpus ----

std::vector<Passage>
read_corpus(const std::filesystem::path& path) {
    std::vector<Passage> corpus;
    std::unordered_set<std::string> seen;
    for_each_json_line(path, [&](const json& obj, std::size_t) {
        auto id = require_string(obj, "id");
        auto text = require_string(obj, "text");
        std::string title;
        if (auto it = obj.find("title"); it != obj.end() && !it->is_null()) {
            if (!it->is_string()) {
                throw FormatError("field title must be a string");
            }
            title = it->get<std::string>();
        }
        if (!seen.insert(id).second) {
            throw FormatError("duplicate id '" + id + "'");
        }
        corpus.emplace_back(std::move(id), std::move(title), std::move(text));
    });
    return corpus;
}

void
write_corpus(std::span<const Passage> corpus, const std::filesystem::path& path) {
    std::vector<std::string> lines;
    lines.reserve(corpus.size());
    for (const auto& p : corpus) {
        ordered_json obj;
        obj["id"] = p.id();
        obj["title"] = p.title();
        obj["text"] = p.text();
        lines.push_back(obj.dump());
    }
    write_lines(path, lines);
}

std::unordered_set<std::string>
id_set(std::span<const Passage> corpus) {
    std::unordered_set<std::string> ids;
    ids.reserve(corpus.size());
    for (const auto& p : corpus) {
        ids.insert(p.id());
    }
    return ids;
}

// ---- eval queries ----

std::vector<EvalQuery>
read_eval_queries(const std::filesystem::path& path, const LanguageSet& languages) {
    std::vector<EvalQuery> queries;
    std::unordered_set<std::string> seen;
    for_each_json_line(path, [&](const json& obj, std::size_t) {
        auto qid = require_string(obj, "qid");
        auto lang = languages.parse(require_string(obj, "lang"));
        auto text = require_string(obj, "text");
        const json& answers_json = require(obj, "answers");
        if (!answers_json.is_array()) {
            throw FormatError("field answers must be an array of strings");
        }
        std::vector<std::string> answers;
        for (const auto& a : answers_json) {
            if (!a.is_string()) {
                throw FormatError("field answers must be an array of strings");
            }
            answers.push_back(a.get<std::string>());
        }
        if (!seen.insert(qid).second) {
            throw FormatError("duplicate qid '" + qid + "'");
        }
        queries.emplace_back(std::move(qid), std::move(lang), std::move(text), std::move(answers));
    });
    return queries;
}

void
write_eval_queries(std::span<const EvalQuery> queries, const std::filesystem::path& path) {
    std::vector<std::string> lines;
    lines.reserve(queries.size());
    for (const auto& q : queries) {
        ordered_json obj;
        obj["qid"] = q.qid();
        obj["lang"] = q.lang().code();
        obj["text"] = q.text();
        obj["answers"] = q.answers();
        lines.push_back(obj.dump());
    }
    write_lines(path, lines);
}

// ---- generated queries ----

namespace {

GeneratedQuerySet
read_genq_impl(const std::filesystem::path& path, const std::unordered_set<std::string>* corpus_ids,
               const LanguageSet& languages) {
    GeneratedQuerySet genq;
    for_each_json_line(path, [&](const json& obj, std::size_t) {
        auto pid = require_string(obj, "passage_id");
        auto lang = languages.parse(require_string(obj, "lang"));
        auto query = require_string(obj, "query");
        const json& idx = require(obj, "sample_index");
        if (!idx.is_number_integer() || idx.get<std::int64_t>() < 0 ||
            idx.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
            throw FormatError("field sample_index must be a non-negative integer");
        }
        if (corpus_ids != nullptr && !corpus_ids->contains(pid)) {
            throw FormatError("unknown passage_id '" + pid + "'");
        }
        genq.add(GeneratedQuery(std::move(pid), std::move(lang), std::move(query), idx.get<std::uint32_t>()));
    });
    return genq;
}

}  // namespace

GeneratedQuerySet
read_generated_queries(const std::filesystem::path& path, const std::unordered_set<std::string>& corpus_ids,
                       const LanguageSet& languages) {
    return read_genq_impl(path, &corpus_ids, languages);
}

GeneratedQuerySet
read_generated_queries(const std::filesystem::path& path, const LanguageSet& languages) {
    return read_genq_impl(path, nullptr, languages);
}

void
write_generated_queries(const GeneratedQuerySet& genq, const std::filesystem::path& path) {
    std::vector<std::string> lines;
    lines.reserve(genq.size());
    for (const auto* q : genq.all()) {
        ordered_json obj;
        obj["passage_id"] = q->passage_id();
        obj["lang"] = q->lang().code();
        obj["query"] = q->text();
        obj["sample_index"] = q->sample_index();
        lines.push_back(obj.dump());
    }
    write_lines(path, lines);
}

// ---- embeddings ----

encoder::EmbeddingStore
decode_embeddings(std::istream& in, const std::string& source) {
    binary::Reader r(in, source);
    const std::string magic = r.bytes(4, "magic");
    if (magic != std::string_view(kEmbeddingMagic, 4)) {
        r.fail("bad magic (expected XQGE)");
    }
    const std::uint32_t version = r.u32("version");
    if (version != kEmbeddingVersion) {
        r.fail("unsupported version " + std::to_string(version));
    }
    const std::uint32_t dim = r.u32("dim");
    if (dim < 1 || dim > kMaxDim) {
        r.fail("dimension " + std::to_string(dim) + " outside [1, 65536]");
    }
    const std::uint64_t count = r.u64("count");

    encoder::EmbeddingStore store(dim);
    for (std::uint64_t i = 0; i < count; ++i) {
        auto rec = r.record(dim);
        if (store.contains(rec.id)) {
            r.fail("duplicate record id '" + rec.id + "'");
        }
        store.add(std::move(rec.id), Embedding(std::move(rec.values)));
    }
    r.expect_end();
    return store;
}

void
encode_embeddings(const encoder::EmbeddingStore& store, std::ostream& out) {
    binary::Writer w(out);
    w.bytes(std::string_view(kEmbeddingMagic, 4));
    w.u32(kEmbeddingVersion);
    w.u32(static_cast<std::uint32_t>(store.dim()));
    w.u64(store.size());
    for (std::size_t i = 0; i < store.size(); ++i) {
        w.record(store.ids()[i], store.embedding(i).values());
    }
}

encoder::EmbeddingStore
read_embeddings(const std::filesystem::path& path) {
    auto in = open_in(path, std::ios::in | std::ios::binary);
    return decode_embeddings(in, path.string());
}

void
write_embeddings(const encoder::EmbeddingStore& store, const std::filesystem::path& path) {
    if (store.dim() > kMaxDim) {
        throw FormatError(path.string() + ": dimension " + std::to_string(store.dim()) + " exceeds 65536");
    }
    auto out = open_out(path, std::ios::out | std::ios::binary | std::ios::trunc);
    encode_embeddings(store, out);
    finish(out, path);
}

// ---- run files ----

std::string
format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    return buf;
}

void
write_run(std::span<const RankedList> lists, std::string_view tag, const std::filesystem::path& path) {
    auto out = open_out(path);
    for (const auto& list : lists) {
        std::size_t rank = 1;
        for (const auto& e : list.entries()) {
            out << list.qid() << " Q0 " << e.passage_id << ' ' << rank++ << ' ' << format_score(e.score) << ' ' << tag
                << '\n';
        }
    }
    finish(out, path);
}

std::vector<RankedList>
read_run(const std::filesystem::path& path) {
    auto in = open_in(path);
    struct Line {
        long rank;
        ScoredPassage entry;
    };
    std::vector<std::string> order;
    std::map<std::string, std::vector<Line>> by_qid;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream fields(line);
        std::string qid, q0, pid, rank_s, score_s, tag, extra;
        if (!(fields >> qid >> q0 >> pid >> rank_s >> score_s >> tag) || (fields >> extra)) {
            throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": expected 6 columns");
        }
        long rank = 0;
        auto [rp, rec] = std::from_chars(rank_s.data(), rank_s.data() + rank_s.size(), rank);
        double score = 0.0;
        auto [sp, sec] = std::from_chars(score_s.data(), score_s.data() + score_s.size(), score);
        if (rec != std::errc() || rp != rank_s.data() + rank_s.size() || sec != std::errc() ||
            sp != score_s.data() + score_s.size()) {
            throw FormatError(path.string() + ": line " + std::to_string(line_no) + ": bad rank or score");
        }
        auto [it, inserted] = by_qid.try_emplace(qid);
        if (inserted) {
            order.push_back(qid);
        }
        it->second.push_back({rank, {pid, score}});
    }

    std::vector<RankedList> lists;
    lists.reserve(order.size());
    for (const auto& qid : order) {
        auto& lines = by_qid[qid];
        std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.rank < b.rank; });
        std::vector<ScoredPassage> entries;
        entries.reserve(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (i > 0 && lines[i].rank == lines[i - 1].rank) {
                throw FormatError(path.string() + ": duplicate rank " + std::to_string(lines[i].rank) + " for '" +
                                  qid + "'");
            }
            entries.push_back(std::move(lines[i].entry));
        }
        try {
            lists.push_back(RankedList::in_rank_order(qid, std::move(entries)));
        } catch (const ValidationError& e) {
            throw FormatError(path.string() + ": " + e.what());
        }
    }
    return lists;
}

}  // namespace xqg::formats
