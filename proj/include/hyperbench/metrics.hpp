/*
 * Copyright 2026 The hyperbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HYPERBENCH_METRICS_HPP
#define HYPERBENCH_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace hyperbench {

/// Per-band mean squared error, (1/n) sum (x_hat - x)^2.
double mse(std::span<const double> x, std::span<const double> x_hat);

struct ClassScore {
    std::size_t tp = 0, fp = 0, fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct ClassificationReport {
    std::vector<ClassScore> per_class;
    /// confusion[truth][predicted]
    std::vector<std::vector<std::size_t>> confusion;

    double macro_f1() const;
    double macro_precision() const;
    double macro_recall() const;
};

/// Scores one class from its counts; 0/0 ratios are 0.
ClassScore score_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// One-vs-rest precision, recall and f1 per class plus the confusion matrix.
ClassificationReport classification_scores(std::span<const int> predicted,
                                           std::span<const int> truth, std::size_t n_classes);

} // namespace hyperbench

#endif
