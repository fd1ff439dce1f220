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

#include "hyperbench/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperbench/binary_io.hpp"
#include "hyperbench/error.hpp"

namespace hyperbench {

void GbtConfig::validate() const {
    if (n_rounds < 1) throw ConfigError("n_rounds", "must be >= 1");
    if (max_depth < 1) throw ConfigError("max_depth", "must be >= 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw ConfigError("learning_rate", "must be positive");
    if (!(reg_lambda >= 0.0) || !std::isfinite(reg_lambda))
        throw ConfigError("reg_lambda", "must be nonnegative");
    if (!(min_split_gain >= 0.0)) throw ConfigError("min_split_gain", "must be nonnegative");
    if (!(min_child_weight >= 0.0)) throw ConfigError("min_child_weight", "must be nonnegative");
}

double RegressionTree::predict(std::span<const double> x) const {
    if (nodes.empty()) return 0.0;
    std::uint32_t i = 0;
    while (nodes[i].feature >= 0) {
        const auto& n = nodes[i];
        i = x[std::size_t(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes[i].value;
}

int RegressionTree::depth() const {
    if (nodes.empty()) return 0;
    std::vector<int> d(nodes.size(), 0);
    int best = 0;
    // children always have larger indices than their parent
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].feature < 0) continue;
        d[nodes[i].left] = d[nodes[i].right] = d[i] + 1;
        best = std::max(best, d[i] + 1);
    }
    return best;
}

double split_gain(double gl, double hl, double gr, double hr, double lambda) {
    const double g = gl + gr, h = hl + hr;
    return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - g * g / (h + lambda));
}

GbtModel::GbtModel(std::size_t n_classes, std::size_t n_features)
    : n_classes_(n_classes), n_features_(n_features), base_score_(n_classes, 0.0) {}

std::vector<double> GbtModel::logits(std::span<const double> x) const {
    if (x.size() != n_features_)
        throw NumericError("gbt: expected " + std::to_string(n_features_) + " features, got " +
                           std::to_string(x.size()));
    std::vector<double> z = base_score_;
    for (const auto& round : trees_)
        for (std::size_t c = 0; c < n_classes_; ++c) z[c] += round[c].predict(x);
    return z;
}

namespace {

void softmax_inplace(std::vector<double>& z) {
    const double mx = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (auto& v : z) s += (v = std::exp(v - mx));
    for (auto& v : z) v /= s;
}

} // namespace

Prediction GbtModel::predict(std::span<const double> x) const {
    Prediction p;
    p.probabilities = logits(x);
    softmax_inplace(p.probabilities);
    p.label = int(std::max_element(p.probabilities.begin(), p.probabilities.end()) -
                  p.probabilities.begin());
    return p;
}

std::vector<int> GbtModel::predict_labels(const Eigen::MatrixXd& x) const {
    std::vector<int> out(std::size_t(x.rows()));
    std::vector<double> row(std::size_t(x.cols()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) row[std::size_t(j)] = x(i, j);
        out[std::size_t(i)] = predict(row).label;
    }
    return out;
}

namespace {

struct Candidate {
    double gain = 0.0;
    std::int32_t feature = -1;
    double threshold = 0.0;
};

struct LevelNode {
    std::uint32_t id = 0;
    double g = 0.0, h = 0.0;
};

RegressionTree grow_tree(const Eigen::MatrixXd& x, const std::vector<std::vector<std::uint32_t>>& sorted,
                         const std::vector<double>& g, const std::vector<double>& h,
                         const GbtConfig& cfg) {
    const auto n = std::size_t(x.rows());
    const auto f_count = std::size_t(x.cols());
    RegressionTree tree;
    tree.nodes.emplace_back();
    std::vector<std::int32_t> slot_of(n, 0);  // sample -> slot in current level, -1 when settled

    std::vector<LevelNode> level{{0, 0.0, 0.0}};
    for (std::size_t i = 0; i < n; ++i) {
        level[0].g += g[i];
        level[0].h += h[i];
    }

    auto make_leaf = [&](const LevelNode& ln) {
        tree.nodes[ln.id].feature = -1;
        tree.nodes[ln.id].value = -ln.g / (ln.h + cfg.reg_lambda) * cfg.learning_rate;
    };

    for (int depth = 0; !level.empty(); ++depth) {
        if (depth >= cfg.max_depth) {
            for (const auto& ln : level) make_leaf(ln);
            break;
        }
        const std::size_t k = level.size();
        std::vector<Candidate> best(k);
        for (auto& b : best) b.gain = cfg.min_split_gain;
        std::vector<double> gl(k), hl(k), last(k);
        std::vector<char> seen(k);

        for (std::size_t f = 0; f < f_count; ++f) {
            std::fill(gl.begin(), gl.end(), 0.0);
            std::fill(hl.begin(), hl.end(), 0.0);
            std::fill(seen.begin(), seen.end(), 0);
            for (auto i : sorted[f]) {
                const auto s = slot_of[i];
                if (s < 0) continue;
                const double v = x(Eigen::Index(i), Eigen::Index(f));
                if (seen[s] && v > last[s]) {
                    const double gr = level[s].g - gl[s], hr = level[s].h - hl[s];
                    if (hl[s] >= cfg.min_child_weight && hr >= cfg.min_child_weight) {
                        const double gain = split_gain(gl[s], hl[s], gr, hr, cfg.reg_lambda);
                        if (gain > best[s].gain) best[s] = {gain, std::int32_t(f), last[s]};
                    }
                }
                gl[s] += g[i];
                hl[s] += h[i];
                last[s] = v;
                seen[s] = 1;
            }
        }

        std::vector<LevelNode> next;
        std::vector<std::int32_t> child_slot(2 * k, -1);
        for (std::size_t s = 0; s < k; ++s) {
            if (best[s].feature < 0) {
                make_leaf(level[s]);
                continue;
            }
            auto left = std::uint32_t(tree.nodes.size());
            tree.nodes.emplace_back();
            tree.nodes.emplace_back();
            auto& node = tree.nodes[level[s].id];
            node.feature = best[s].feature;
            node.threshold = best[s].threshold;
            node.left = left;
            node.right = left + 1;
            child_slot[2 * s] = std::int32_t(next.size());
            next.push_back({left, 0.0, 0.0});
            child_slot[2 * s + 1] = std::int32_t(next.size());
            next.push_back({left + 1, 0.0, 0.0});
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto s = slot_of[i];
            if (s < 0) continue;
            if (best[s].feature < 0) {
                slot_of[i] = -1;
                continue;
            }
            const bool go_left =
                x(Eigen::Index(i), Eigen::Index(best[s].feature)) <= best[s].threshold;
            const auto c = child_slot[2 * std::size_t(s) + (go_left ? 0 : 1)];
            slot_of[i] = c;
            next[c].g += g[i];
            next[c].h += h[i];
        }
        level = std::move(next);
    }
    return tree;
}

} // namespace

GbtModel gbt_train(const Eigen::MatrixXd& x, std::span<const int> labels, const GbtConfig& cfg) {
    int mx = -1;
    for (int y : labels) mx = std::max(mx, y);
    return gbt_train(x, labels, std::size_t(mx + 1), cfg);
}

GbtModel gbt_train(const Eigen::MatrixXd& x, std::span<const int> labels, std::size_t n_classes,
                   const GbtConfig& cfg) {
    cfg.validate();
    const auto n = std::size_t(x.rows());
    if (n == 0 || x.cols() == 0) throw NumericError("gbt_train: empty training matrix");
    if (labels.size() != n)
        throw NumericError("gbt_train: " + std::to_string(labels.size()) + " labels for " +
                           std::to_string(n) + " rows");
    if (!x.allFinite()) throw NumericError("gbt_train: non-finite feature value");
    std::vector<char> present(n_classes, 0);
    for (int y : labels) {
        if (y < 0 || std::size_t(y) >= n_classes)
            throw NumericError("gbt_train: label " + std::to_string(y) + " out of range");
        present[std::size_t(y)] = 1;
    }
    if (std::count(present.begin(), present.end(), 1) < 2)
        throw NumericError("gbt_train: need at least two classes");

    const auto f_count = std::size_t(x.cols());
    std::vector<std::vector<std::uint32_t>> sorted(f_count);
    for (std::size_t f = 0; f < f_count; ++f) {
        auto& idx = sorted[f];
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) {
            return x(Eigen::Index(a), Eigen::Index(f)) < x(Eigen::Index(b), Eigen::Index(f));
        });
    }

    GbtModel model(n_classes, f_count);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n_classes));
    std::vector<double> g(n), h(n), p(n_classes);
    std::vector<std::vector<double>> probs(n, std::vector<double>(n_classes));
    std::vector<double> row(f_count);

    for (int round = 0; round < cfg.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n_classes; ++c) p[c] = z(Eigen::Index(i), Eigen::Index(c));
            softmax_inplace(p);
            probs[i] = p;
        }
        std::vector<RegressionTree> trees;
        for (std::size_t c = 0; c < n_classes; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                const double pc = probs[i][c];
                g[i] = pc - (std::size_t(labels[i]) == c ? 1.0 : 0.0);
                h[i] = std::max(pc * (1.0 - pc), 1e-16);
            }
            trees.push_back(grow_tree(x, sorted, g, h, cfg));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < f_count; ++j) row[j] = x(Eigen::Index(i), Eigen::Index(j));
            for (std::size_t c = 0; c < n_classes; ++c)
                z(Eigen::Index(i), Eigen::Index(c)) += trees[c].predict(row);
        }
        model.trees_.push_back(std::move(trees));
    }
    return model;
}

std::string GbtModel::serialize() const {
    BinaryWriter w;
    w.bytes(kGbtMagic);
    w.u32(std::uint32_t(n_classes_));
    w.u32(std::uint32_t(n_features_));
    w.u32(std::uint32_t(trees_.size()));
    for (double b : base_score_) w.f64(b);
    for (const auto& round : trees_) {
        for (const auto& t : round) {
            w.u32(std::uint32_t(t.nodes.size()));
            for (const auto& nd : t.nodes) {
                w.i32(nd.feature);
                w.f64(nd.threshold);
                w.u32(nd.left);
                w.u32(nd.right);
                w.f64(nd.value);
            }
        }
    }
    return w.take();
}

GbtModel GbtModel::deserialize(std::string_view bytes) {
    BinaryReader r(bytes);
    r.expect_magic(kGbtMagic);
    auto at = r.offset();
    const auto classes = r.u32();
    const auto features = r.u32();
    const auto rounds = r.u32();
    if (classes < 2 || features < 1) throw ParseError(at, "invalid class or feature count");
    GbtModel m(classes, features);
    for (auto& b : m.base_score_) b = r.f64();
    for (std::uint32_t k = 0; k < rounds; ++k) {
        std::vector<RegressionTree> round(classes);
        for (auto& t : round) {
            at = r.offset();
            const auto count = r.u32();
            if (count == 0 || count > r.remaining()) throw ParseError(at, "invalid node count");
            t.nodes.resize(count);
            for (std::uint32_t i = 0; i < count; ++i) {
                at = r.offset();
                auto& nd = t.nodes[i];
                nd.feature = r.i32();
                nd.threshold = r.f64();
                nd.left = r.u32();
                nd.right = r.u32();
                nd.value = r.f64();
                if (nd.feature >= std::int32_t(features) || nd.feature < -1)
                    throw ParseError(at, "node feature out of range");
                if (nd.feature >= 0 &&
                    (nd.left <= i || nd.right <= i || nd.left >= count || nd.right >= count))
                    throw ParseError(at, "node child index out of range");
                if (!std::isfinite(nd.threshold) || !std::isfinite(nd.value))
                    throw ParseError(at, "non-finite node value");
            }
        }
        m.trees_.push_back(std::move(round));
    }
    if (!r.at_end()) throw ParseError(r.offset(), "trailing bytes after model");
    return m;
}

void save_gbt(const GbtModel& m, const std::filesystem::path& path) {
    write_file(path, m.serialize());
}

GbtModel load_gbt(const std::filesystem::path& path) { return GbtModel::deserialize(read_file(path)); }

} // namespace hyperbench
