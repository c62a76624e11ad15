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

#include "xqg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "xqg/augment.hpp"
#include "xqg/index.hpp"
#include "xqg/report.hpp"

namespace xqg::experiments {

std::string
to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::Alpha:
            return "alpha";
        case SweepVariable::NQueries:
            return "n_queries";
        case SweepVariable::SourceLanguage:
            return "source_language";
    }
    return "unknown";
}

SweepVariable
parse_sweep_variable(std::string_view name) {
    if (name == "alpha") {
        return SweepVariable::Alpha;
    }
    if (name == "n_queries" || name == "n") {
        return SweepVariable::NQueries;
    }
    if (name == "source_language" || name == "langs") {
        return SweepVariable::SourceLanguage;
    }
    throw ValidationError("variable", "unknown sweep variable '" + std::string(name) +
                                          "' (expected alpha, n_queries or source_language)");
}

namespace {

void
validate_common(const std::vector<std::size_t>& m_tokens_list, std::size_t k) {
    if (m_tokens_list.empty()) {
        throw ValidationError("m_tokens_list", "at least one token budget is required");
    }
    for (const auto m : m_tokens_list) {
        if (m == 0) {
            throw ValidationError("m_tokens_list", "token budgets must be positive");
        }
    }
    if (k == 0) {
        throw ValidationError("k", "must be positive");
    }
}

void
validate_numeric_grid(const std::vector<double>& grid, SweepVariable variable, const char* field) {
    if (grid.empty()) {
        throw ValidationError(field, "grid is empty");
    }
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError(field, "grid has duplicate values");
    }
    if (sorted.front() != 0.0) {
        throw ValidationError(field, "grid must contain 0 as the baseline");
    }
    for (const double v : sorted) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError(field, "grid values must be finite and non-negative");
        }
        if (variable == SweepVariable::Alpha && v > 1.0) {
            throw ValidationError(field, "alpha values must lie in [0, 1]");
        }
        if (variable == SweepVariable::NQueries && v != std::floor(v)) {
            throw ValidationError(field, "n values must be whole numbers");
        }
    }
}

std::string
format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string
join_codes(const std::vector<LanguageTag>& langs) {
    std::string out;
    for (const auto& t : langs) {
        out += (out.empty() ? "" : ",") + t.code();
    }
    return out.empty() ? "none" : out;
}

/// Fixed inputs of a sweep: passage tokens and qids are prepared once.
class Evaluator {
 public:
    explicit Evaluator(const Inputs& inputs) : inputs_(inputs), lookup_(inputs.corpus) {
        if (inputs.genq == nullptr || inputs.store == nullptr || inputs.query_store == nullptr) {
            throw ValidationError("inputs", "generated queries, store and query store are required");
        }
        for (const auto& q : inputs.queries) {
            qids_.push_back(q.qid());
        }
        options_.languages = inputs.languages;
    }

    std::vector<eval::MetricReport>
    run(const AugmentationConfig& cfg, std::span<const std::size_t> m_tokens_list, std::size_t k) const {
        const auto augmented = augment::augment_corpus(inputs_.corpus, *inputs_.store, *inputs_.genq, cfg);
        const auto index = index::build_exact(augmented);
        const auto run = index::search_all(index, *inputs_.query_store, qids_, k);
        std::vector<eval::MetricReport> reports;
        for (const auto m : m_tokens_list) {
            reports.push_back(eval::recall_at_kilotokens(run, lookup_, inputs_.queries, m, options_));
        }
        return reports;
    }

 private:
    const Inputs& inputs_;
    eval::PassageLookup lookup_;
    std::vector<std::string> qids_;
    eval::EvalOptions options_;
};

struct Point {
    std::string label;
    double value;
    AugmentationConfig config;
    bool baseline;
};

std::vector<Point>
grid_points(const SweepSpec& spec) {
    std::vector<Point> points;
    const auto& fixed = spec.fixed;
    if (spec.variable == SweepVariable::SourceLanguage) {
        auto grid = spec.language_grid;
        std::sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        for (auto& langs : grid) {
            const bool baseline = langs.empty();
            const double value = static_cast<double>(langs.size());
            std::string label = join_codes(langs);
            auto cfg = baseline ? fixed.with_languages({}).with_alpha(0.0) : fixed.with_languages(std::move(langs));
            points.push_back({std::move(label), value, std::move(cfg), baseline});
        }
        return points;
    }
    auto grid = spec.grid;
    std::sort(grid.begin(), grid.end());
    for (const double v : grid) {
        const bool baseline = v == 0.0;
        AugmentationConfig cfg = spec.variable == SweepVariable::Alpha
                                     ? fixed.with_alpha(v)
                                     : fixed.with_queries_per_language(static_cast<std::size_t>(v));
        if (baseline) {
            cfg = cfg.with_alpha(0.0);
        }
        points.push_back({format_value(v), v, std::move(cfg), baseline});
    }
    return points;
}

std::size_t
languages_with_queries(const eval::MetricReport& report) {
    return std::max<std::size_t>(1, report.per_language.size());
}

SweepResult
sweep_with(const SweepSpec& spec, const Evaluator& evaluator) {
    SweepResult result;
    result.variable = spec.variable;
    result.m_tokens_list = spec.m_tokens_list;
    result.k = spec.k;
    for (auto& p : grid_points(spec)) {
        SweepRow row;
        row.reports = evaluator.run(p.config, spec.m_tokens_list, spec.k);
        row.label = std::move(p.label);
        row.value = p.value;
        row.config = std::move(p.config);
        row.baseline = p.baseline;
        result.rows.push_back(std::move(row));
    }
    const SweepRow& base = result.baseline();
    const std::size_t treated = result.rows.size() - 1;
    result.bonferroni_factor = std::max<std::size_t>(1, treated * languages_with_queries(base.reports.front()));
    for (auto& row : result.rows) {
        if (row.baseline) {
            continue;
        }
        for (std::size_t i = 0; i < row.reports.size(); ++i) {
            row.significance.push_back(
                eval::compare_reports(row.reports[i], base.reports[i], result.bonferroni_factor));
        }
    }
    return result;
}

}  // namespace

void
SweepSpec::validate() const {
    validate_common(m_tokens_list, k);
    if (variable == SweepVariable::SourceLanguage) {
        if (language_grid.empty()) {
            throw ValidationError("grid", "grid is empty");
        }
        std::set<std::vector<LanguageTag>> seen;
        for (const auto& langs : language_grid) {
            std::set<LanguageTag> unique(langs.begin(), langs.end());
            if (unique.size() != langs.size()) {
                throw ValidationError("grid", "language set '" + join_codes(langs) + "' repeats a language");
            }
            if (!seen.insert({unique.begin(), unique.end()}).second) {
                throw ValidationError("grid", "language set '" + join_codes(langs) + "' appears twice");
            }
        }
        if (!seen.contains({})) {
            throw ValidationError("grid", "grid must contain the empty language set as the baseline");
        }
        return;
    }
    validate_numeric_grid(grid, variable, "grid");
}

const SweepRow&
SweepResult::baseline() const {
    for (const auto& row : rows) {
        if (row.baseline) {
            return row;
        }
    }
    throw Error("sweep has no baseline row");
}

std::vector<eval::MetricReport>
evaluate(const Inputs& inputs, const AugmentationConfig& cfg, std::span<const std::size_t> m_tokens_list,
         std::size_t k) {
    validate_common({m_tokens_list.begin(), m_tokens_list.end()}, k);
    return Evaluator(inputs).run(cfg, m_tokens_list, k);
}

SweepResult
run_sweep(const SweepSpec& spec, const Inputs& inputs) {
    spec.validate();
    return sweep_with(spec, Evaluator(inputs));
}

const SweepResult&
LanguageMatrix::cell(const LanguageTag& target, const LanguageTag& source) const {
    const auto t = std::find(targets.begin(), targets.end(), target);
    const auto s = std::find(sources.begin(), sources.end(), source);
    if (t == targets.end() || s == sources.end()) {
        throw NotFoundError("matrix cell", target.code() + "/" + source.code());
    }
    return cells[static_cast<std::size_t>(t - targets.begin())][static_cast<std::size_t>(s - sources.begin())];
}

LanguageMatrix
cross_language_matrix(const MatrixSpec& spec, const Inputs& inputs) {
    validate_common(spec.m_tokens_list, spec.k);
    validate_numeric_grid(spec.alpha_grid, SweepVariable::Alpha, "alpha_grid");
    if (inputs.genq == nullptr) {
        throw ValidationError("inputs", "generated queries are required");
    }

    LanguageMatrix matrix;
    matrix.sources = inputs.languages->ordered(inputs.genq->languages());
    std::vector<LanguageTag> targets;
    for (const auto& q : inputs.queries) {
        targets.push_back(q.lang());
    }
    matrix.targets = inputs.languages->ordered(std::move(targets));
    if (matrix.sources.size() < 2) {
        throw ValidationError("genq", "the language matrix needs generated queries in at least two languages");
    }
    if (matrix.targets.size() < 2) {
        throw ValidationError("queries", "the language matrix needs eval queries in at least two languages");
    }

    // Each cell is a sweep over the target's queries alone, so it matches run_sweep on the
    // filtered query list exactly (the corpus is re-augmented per cell).
    matrix.cells.resize(matrix.targets.size());
    for (std::size_t ti = 0; ti < matrix.targets.size(); ++ti) {
        std::vector<EvalQuery> filtered;
        for (const auto& q : inputs.queries) {
            if (q.lang() == matrix.targets[ti]) {
                filtered.push_back(q);
            }
        }
        Inputs cell_inputs = inputs;
        cell_inputs.queries = filtered;
        const Evaluator evaluator(cell_inputs);
        for (const auto& source : matrix.sources) {
            SweepSpec sweep;
            sweep.variable = SweepVariable::Alpha;
            sweep.grid = spec.alpha_grid;
            sweep.fixed = spec.fixed.with_languages({source});
            sweep.m_tokens_list = spec.m_tokens_list;
            sweep.k = spec.k;
            matrix.cells[ti].push_back(sweep_with(sweep, evaluator));
        }
    }
    return matrix;
}

nlohmann::ordered_json
to_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["variable"] = to_string(result.variable);
    j["k"] = result.k;
    j["m_tokens"] = result.m_tokens_list;
    j["bonferroni_factor"] = result.bonferroni_factor;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json r;
        r["label"] = row.label;
        r["value"] = row.value;
        r["baseline"] = row.baseline;
        r["alpha"] = row.config.alpha();
        auto langs = nlohmann::ordered_json::array();
        for (const auto& t : row.config.languages()) {
            langs.push_back(t.code());
        }
        r["languages"] = std::move(langs);
        r["n_queries"] = row.config.queries_per_language();
        auto metrics = nlohmann::ordered_json::object();
        auto sig = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.reports.size(); ++i) {
            metrics[row.reports[i].metric] = eval::to_json(row.reports[i], false);
            if (!row.significance.empty()) {
                sig[row.reports[i].metric] = eval::to_json(row.significance[i]);
            }
        }
        r["metrics"] = std::move(metrics);
        r["significance"] = std::move(sig);
        rows.push_back(std::move(r));
    }
    return j;
}

nlohmann::ordered_json
to_json(const LanguageMatrix& matrix) {
    nlohmann::ordered_json j;
    auto codes = [](const std::vector<LanguageTag>& tags) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& t : tags) {
            arr.push_back(t.code());
        }
        return arr;
    };
    j["sources"] = codes(matrix.sources);
    j["targets"] = codes(matrix.targets);
    auto& cells = j["cells"] = nlohmann::ordered_json::object();
    for (std::size_t t = 0; t < matrix.targets.size(); ++t) {
        auto& row = cells[matrix.targets[t].code()] = nlohmann::ordered_json::object();
        for (std::size_t s = 0; s < matrix.sources.size(); ++s) {
            row[matrix.sources[s].code()] = to_json(matrix.cells[t][s]);
        }
    }
    return j;
}

namespace {

void
write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        throw Error(path.string() + ": write failed");
    }
}

std::string
lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::filesystem::path
write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / ("sweep_" + to_string(result.variable) + ".json");
    write_text(path, to_json(result).dump(2) + "\n");
    return path;
}

std::vector<std::filesystem::path>
write_matrix_csv(const LanguageMatrix& matrix, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    if (matrix.cells.empty() || matrix.cells.front().empty()) {
        return written;
    }
    const SweepResult& any = matrix.cells.front().front();
    for (std::size_t a = 0; a < any.rows.size(); ++a) {
        for (std::size_t m = 0; m < any.m_tokens_list.size(); ++m) {
            const std::string metric = any.rows[a].reports[m].metric;
            std::string name = metric;
            name.erase(std::remove(name.begin(), name.end(), '@'), name.end());
            const auto path = dir / ("matrix_" + lowered(name) + "_alpha" + any.rows[a].label + ".csv");
            std::string csv = "target";
            for (const auto& s : matrix.sources) {
                csv += "," + s.code();
            }
            csv += "\n";
            for (std::size_t t = 0; t < matrix.targets.size(); ++t) {
                csv += matrix.targets[t].code();
                for (std::size_t s = 0; s < matrix.sources.size(); ++s) {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), ",%.6f", matrix.cells[t][s].rows[a].reports[m].average);
                    csv += buf;
                }
                csv += "\n";
            }
            write_text(path, csv);
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace xqg::experiments
