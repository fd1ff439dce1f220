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

#include "hyperbench/metrics.hpp"

#include <string>

#include "hyperbench/error.hpp"

namespace hyperbench {

double mse(std::span<const double> x, std::span<const double> x_hat) {
    if (x.size() != x_hat.size())
        throw NumericError("mse: length mismatch (" + std::to_string(x.size()) + " vs " +
                           std::to_string(x_hat.size()) + ")");
    if (x.empty()) throw NumericError("mse: empty spectra");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x_hat[i] - x[i];
        acc += d * d;
    }
    return acc / double(x.size());
}

ClassScore score_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    ClassScore s{tp, fp, fn};
    auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
    s.precision = ratio(double(tp), double(tp + fp));
    s.recall = ratio(double(tp), double(tp + fn));
    s.f1 = ratio(2.0 * s.precision * s.recall, s.precision + s.recall);
    return s;
}

ClassificationReport classification_scores(std::span<const int> predicted,
                                           std::span<const int> truth, std::size_t n_classes) {
    if (predicted.size() != truth.size())
        throw NumericError("classification_scores: length mismatch");
    ClassificationReport r;
    r.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        int p = predicted[i], t = truth[i];
        if (p < 0 || t < 0 || std::size_t(p) >= n_classes || std::size_t(t) >= n_classes)
            throw NumericError("classification_scores: label out of range at sample " +
                               std::to_string(i));
        ++r.confusion[t][p];
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
        std::size_t tp = r.confusion[c][c], fp = 0, fn = 0;
        for (std::size_t k = 0; k < n_classes; ++k) {
            if (k == c) continue;
            fp += r.confusion[k][c];
            fn += r.confusion[c][k];
        }
        r.per_class.push_back(score_from_counts(tp, fp, fn));
    }
    return r;
}

namespace {
template <typename F>
double mean_of(const std::vector<ClassScore>& v, F f) {
    if (v.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : v) acc += f(s);
    return acc / double(v.size());
}
} // namespace

double ClassificationReport::macro_f1() const {
    return mean_of(per_class, [](const ClassScore& s) { return s.f1; });
}
double ClassificationReport::macro_precision() const {
    return mean_of(per_class, [](const ClassScore& s) { return s.precision; });
}
double ClassificationReport::macro_recall() const {
    return mean_of(per_class, [](const ClassScore& s) { return s.recall; });
}

} // namespace hyperbench
