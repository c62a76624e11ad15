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

#include "xqg/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace xqg::eval {

namespace {

// Continued fraction for I_x(a, b), modified Lentz. Converges quickly for x < (a+1)/(a+b+2).
double
beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 500;
    constexpr double kEpsilon = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) {
            return h;
        }
    }
    throw Error("incomplete beta: continued fraction did not converge");
}

}  // namespace

double
regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw ValidationError("a,b", "incomplete beta parameters must be positive");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ValidationError("x", "incomplete beta argument must lie in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double
student_t_two_tailed(double t, double dof) {
    if (!(dof > 0.0)) {
        throw ValidationError("dof", "degrees of freedom must be positive");
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    return regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

TTestResult
paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("b", "paired samples differ in length (" + std::to_string(a.size()) + " vs " +
                                       std::to_string(b.size()) + ")");
    }
    if (a.size() < 2) {
        throw ValidationError("a", "paired t-test needs at least two pairs");
    }
    const auto n = static_cast<double>(a.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean += a[i] - b[i];
    }
    mean /= n;
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = (a[i] - b[i]) - mean;
        ss += d * d;
    }
    const double variance = ss / (n - 1.0);
    if (variance == 0.0) {
        return {0.0, 1.0};
    }
    const double t = mean / std::sqrt(variance / n);
    return {t, student_t_two_tailed(t, n - 1.0)};
}

std::vector<double>
bonferroni(std::span<const double> p_values, std::size_t num_comparisons) {
    if (num_comparisons == 0) {
        throw ValidationError("num_comparisons", "must be positive");
    }
    std::vector<double> out;
    out.reserve(p_values.size());
    for (const double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("p_values", "p-value " + std::to_string(p) + " outside [0, 1]");
        }
        out.push_back(std::min(1.0, p * static_cast<double>(num_comparisons)));
    }
    return out;
}

SignificanceReport
compare_reports(const MetricReport& treatment, const MetricReport& baseline, std::size_t num_comparisons,
                double level) {
    SignificanceReport report;
    for (const auto& treated : treatment.per_language) {
        const LanguageRecall* base = baseline.find(treated.lang);
        if (base == nullptr || base->successes.size() != treated.successes.size()) {
            throw ValidationError("baseline", "baseline does not cover the same " + treated.lang.code() + " queries");
        }
        std::unordered_map<std::string_view, int> base_success;
        for (const auto& s : base->successes) {
            base_success.emplace(s.qid, s.success);
        }
        std::vector<double> a;
        std::vector<double> b;
        for (const auto& s : treated.successes) {
            auto it = base_success.find(s.qid);
            if (it == base_success.end()) {
                throw ValidationError("baseline", "query '" + s.qid + "' missing from the baseline");
            }
            a.push_back(s.success);
            b.push_back(it->second);
        }

        Comparison c;
        c.label = treatment.metric + "/" + treated.lang.code();
        if (a.size() >= 2) {
            const auto result = paired_t_test(a, b);
            c.t_statistic = result.t;
            c.p_raw = result.p;
        }
        const double raw[] = {c.p_raw};
        c.p_corrected = bonferroni(raw, num_comparisons).front();
        c.significant = c.p_corrected < level;
        report.comparisons.push_back(std::move(c));
    }
    return report;
}

}  // namespace xqg::eval
