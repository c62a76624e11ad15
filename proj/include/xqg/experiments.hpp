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

// Scripted sweeps over the augmentation knobs, the source-by-target language matrix,
// and a seeded synthetic world with a known cross-lingual geometry.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xqg/core.hpp"
#include "xqg/encoder.hpp"
#include "xqg/eval.hpp"
#include "xqg/significance.hpp"

namespace xqg::experiments {

/// Everything one evaluation needs. `store` holds passage and generated-query vectors,
/// `query_store` holds eval-query vectors keyed by qid.
struct Inputs {
    std::span<const Passage> corpus;
    const GeneratedQuerySet* genq = nullptr;
    const encoder::EmbeddingStore* store = nullptr;
    std::span<const EvalQuery> queries;
    const encoder::EmbeddingStore* query_store = nullptr;
    const LanguageSet* languages = &LanguageSet::defaults();
};

enum class SweepVariable { Alpha, NQueries, SourceLanguage };

/// "alpha", "n_queries", "source_language".
std::string
to_string(SweepVariable variable);

SweepVariable
parse_sweep_variable(std::string_view name);

inline const std::vector<std::size_t> kDefaultMTokens = {2000, 5000};
inline constexpr std::size_t kDefaultK = 100;

struct SweepSpec {
    SweepVariable variable = SweepVariable::Alpha;
    /// Alpha or n values; used unless variable is SourceLanguage. Any order, no duplicates,
    /// must contain 0.
    std::vector<double> grid;
    /// Language sets for SourceLanguage; must contain the empty set.
    std::vector<std::vector<LanguageTag>> language_grid;
    /// Values of the knobs that are not swept.
    AugmentationConfig fixed = AugmentationConfig::none();
    std::vector<std::size_t> m_tokens_list = kDefaultMTokens;
    std::size_t k = kDefaultK;

    void
    validate() const;
};

struct SweepRow {
    std::string label;
    /// Grid value; the language count for SourceLanguage rows.
    double value = 0.0;
    AugmentationConfig config = AugmentationConfig::none();
    bool baseline = false;
    /// One report per m in the sweep's m_tokens_list.
    std::vector<eval::MetricReport> reports;
    /// Parallel to `reports`; empty for the baseline row.
    std::vector<eval::SignificanceReport> significance;
};

struct SweepResult {
    SweepVariable variable = SweepVariable::Alpha;
    std::vector<std::size_t> m_tokens_list;
    std::size_t k = kDefaultK;
    std::size_t bonferroni_factor = 1;
    /// Numeric grids ascending; language grids by size, then language order.
    std::vector<SweepRow> rows;

    const SweepRow&
    baseline() const;
};

/// Augments, indexes exactly, retrieves the top k for every query and scores each m.
std::vector<eval::MetricReport>
evaluate(const Inputs& inputs, const AugmentationConfig& cfg, std::span<const std::size_t> m_tokens_list,
         std::size_t k = kDefaultK);

/// The baseline row is evaluated with alpha forced to 0 (an n = 0 or empty-language point
/// would otherwise still scale passages by 1 - alpha). Comparisons use Bonferroni factor
/// (non-baseline points) x (languages with queries).
SweepResult
run_sweep(const SweepSpec& spec, const Inputs& inputs);

struct MatrixSpec {
    std::vector<double> alpha_grid;
    /// Supplies n and renormalize; its languages and alpha are ignored.
    AugmentationConfig fixed = AugmentationConfig::none();
    std::vector<std::size_t> m_tokens_list = kDefaultMTokens;
    std::size_t k = kDefaultK;
};

struct LanguageMatrix {
    std::vector<LanguageTag> sources;
    std::vector<LanguageTag> targets;
    /// cells[t][s]: alpha sweep augmenting with sources[s] only, scored on targets[t] queries.
    std::vector<std::vector<SweepResult>> cells;

    const SweepResult&
    cell(const LanguageTag& target, const LanguageTag& source) const;
};

/// Sources are the generated-query languages, targets the eval-query languages; both need
/// at least two members.
LanguageMatrix
cross_language_matrix(const MatrixSpec& spec, const Inputs& inputs);

nlohmann::ordered_json
to_json(const SweepResult& result);

nlohmann::ordered_json
to_json(const LanguageMatrix& matrix);

/// `sweep_<variable>.json` under `dir`; returns the path written.
std::filesystem::path
write_sweep(const SweepResult& result, const std::filesystem::path& dir);

/// One CSV per (alpha, m): rows are targets, columns sources, cells recall.
/// Files are `matrix_<metric>_alpha<value>.csv`, e.g. matrix_r2kt_alpha0.02.csv.
std::vector<std::filesystem::path>
write_matrix_csv(const LanguageMatrix& matrix, const std::filesystem::path& dir);

struct SyntheticWorldSpec {
    std::size_t num_passages = 1000;
    std::size_t vocab_per_language = 2000;
    std::vector<std::string> languages = {"Ar", "Bn", "Fi"};
    /// Standard deviation of per-component Gaussian noise on query vectors.
    double query_noise = 0.1;
    double offset_scale = 2.0;
    std::uint64_t seed = 7;

    std::size_t dim = 64;
    std::size_t passage_tokens = 100;
    std::size_t query_tokens = 30;
    std::size_t num_topics = 50;
    std::size_t topic_vocab = 60;
    /// Share of passage tokens drawn from the passage's topic.
    double topic_fraction = 0.8;
    std::size_t samples_per_language = 5;
    std::size_t queries_per_language = 200;
    /// (a, b): language b is rendered with a's surface form and offset, so the two coincide.
    std::vector<std::pair<std::string, std::string>> shared_surfaces;

    void
    validate() const;
};

/// Passages are English word ids with one answer token each. In language t, a query about
/// passage p is a sample of p's words rendered as "<t>:w<id>", embedded as
///
///     normalize(theta(p) + s * normalize(u_t + theta(rendered words))) + noise
///
/// where u_t is the hashed language direction and s the offset scale. Generated queries
/// and eval queries are drawn from the same distribution; s = 0 leaves only theta(p).
struct SyntheticWorld {
    LanguageSet languages = LanguageSet::defaults();
    std::vector<Passage> corpus;
    GeneratedQuerySet genq;
    encoder::EmbeddingStore store{1};
    std::vector<EvalQuery> queries;
    encoder::EmbeddingStore query_store{1};

    Inputs
    inputs() const;
};

SyntheticWorld
generate_synthetic_world(const SyntheticWorldSpec& spec);

}  // namespace xqg::experiments
