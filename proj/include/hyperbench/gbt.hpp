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

#ifndef HYPERBENCH_GBT_HPP
#define HYPERBENCH_GBT_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hyperbench {

struct GbtConfig {
    int n_rounds = 10;
    int max_depth = 10;
    double learning_rate = 0.3;
    double reg_lambda = 1.0;
    double min_split_gain = 0.0;
    double min_child_weight = 1.0;
    std::uint64_t seed = 0;  // training is deterministic; kept for the record

    void validate() const;
};

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // x[feature] <= threshold goes left
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double value = 0.0;         // leaf output (already scaled by the learning rate)

    bool operator==(const TreeNode&) const = default;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double predict(std::span<const double> x) const;
    /// Edges on the longest root-to-leaf path.
    int depth() const;

    bool operator==(const RegressionTree&) const = default;
};

/// Structure score gain of a split:
/// 1/2 [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)].
double split_gain(double g_left, double h_left, double g_right, double h_right, double lambda);

struct Prediction {
    int label = 0;
    std::vector<double> probabilities;
};

/// Softmax ensemble: one regression tree per class per boosting round.
class GbtModel {
public:
    GbtModel() = default;
    GbtModel(std::size_t n_classes, std::size_t n_features);

    std::size_t n_classes() const noexcept { return n_classes_; }
    std::size_t n_features() const noexcept { return n_features_; }
    std::size_t n_rounds() const noexcept { return trees_.size(); }

    /// trees()[round][class]
    const std::vector<std::vector<RegressionTree>>& trees() const noexcept { return trees_; }
    const std::vector<double>& base_score() const noexcept { return base_score_; }

    std::vector<double> logits(std::span<const double> x) const;
    /// Softmax of the summed leaf values; argmax ties go to the lowest index.
    Prediction predict(std::span<const double> x) const;
    /// Labels for every row of `x`.
    std::vector<int> predict_labels(const Eigen::MatrixXd& x) const;

    std::string serialize() const;
    static GbtModel deserialize(std::string_view bytes);

    bool operator==(const GbtModel&) const = default;

private:
    friend GbtModel gbt_train(const Eigen::MatrixXd&, std::span<const int>, std::size_t,
                              const GbtConfig&);

    std::size_t n_classes_ = 0;
    std::size_t n_features_ = 0;
    std::vector<double> base_score_;
    std::vector<std::vector<RegressionTree>> trees_;
};

inline constexpr std::string_view kGbtMagic = "HGBT1";

/// Exact greedy second-order boosting with the softmax objective. Rows of
/// `x` are samples; labels must lie in [0, C) with at least two distinct
/// classes present. Candidate splits are scanned feature by feature in
/// ascending order of threshold; only a strictly larger gain replaces the
/// incumbent, so ties resolve to the lowest feature, then lowest threshold.
GbtModel gbt_train(const Eigen::MatrixXd& x, std::span<const int> labels, const GbtConfig& cfg);

/// Same, with an explicit class count (classes may be absent from `labels`).
GbtModel gbt_train(const Eigen::MatrixXd& x, std::span<const int> labels, std::size_t n_classes,
                   const GbtConfig& cfg);

void save_gbt(const GbtModel& m, const std::filesystem::path& path);
GbtModel load_gbt(const std::filesystem::path& path);

} // namespace hyperbench

#endif
