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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "xqg/eval.hpp"

namespace xqg::eval {

struct TTestResult {
    double t;
    double p;
};

/// Two-tailed paired t-test on a[i] - b[i] with len - 1 degrees of freedom.
/// Zero variance of the differences gives t = 0, p = 1 by convention.
TTestResult
paired_t_test(std::span<const double> a, std::span<const double> b);

/// I_x(a, b) by Lentz's continued fraction; |error| < 1e-13 for moderate a, b.
double
regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double
student_t_two_tailed(double t, double dof);

/// min(1, p * num_comparisons) for each p; each p must lie in [0, 1].
std::vector<double>
bonferroni(std::span<const double> p_values, std::size_t num_comparisons);

struct Comparison {
    std::string label;
    double t_statistic = 0.0;
    double p_raw = 1.0;
    double p_corrected = 1.0;
    bool significant = false;

    bool
    operator==(const Comparison&) const = default;
};

struct SignificanceReport {
    std::vector<Comparison> comparisons;

    bool
    operator==(const SignificanceReport&) const = default;
};

inline constexpr double kSignificanceLevel = 0.05;

/// Per-language paired t-tests of treatment against baseline success bits, paired by qid.
/// Labels read "<metric>/<lang>". Both reports must cover the same queries. A language
/// with fewer than two queries gets t = 0, p = 1.
SignificanceReport
compare_reports(const MetricReport& treatment, const MetricReport& baseline, std::size_t num_comparisons,
                double level = kSignificanceLevel);

}  // namespace xqg::eval
