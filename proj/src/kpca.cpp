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

#include "hyperbench/kpca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hyperbench/error.hpp"
#include "hyperbench/linalg.hpp"

namespace hyperbench {

Eigen::MatrixXd polynomial_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  double gamma, double offset, int degree) {
    Eigen::MatrixXd k = (gamma * (a * b.transpose())).array() + offset;
    if (degree == 1) return k;
    Eigen::MatrixXd base = k;
    for (int p = 1; p < degree; ++p) k.array() *= base.array();
    return k;
}

KpcaModel KpcaModel::fit(const Eigen::MatrixXd& train, std::size_t d, const KpcaParams& params) {
    if (train.rows() < 1) throw NumericError("kpca: empty training set");
    if (params.degree < 1) throw ConfigError("degree", "must be >= 1");
    if (params.max_anchors < 1) throw ConfigError("max_anchors", "must be >= 1");
    if (d < 1 || d > std::size_t(train.cols()))
        throw ConfigError("d", "must lie in [1, " + std::to_string(train.cols()) + "]");
    check_finite(train, "kpca training set");

    KpcaModel m;
    m.degree_ = params.degree;
    m.offset_ = params.offset;
    m.gamma_ = params.gamma > 0.0 ? params.gamma : 1.0 / double(train.cols());

    const auto n_train = std::size_t(train.rows());
    const std::size_t n_anchor = std::min(n_train, params.max_anchors);
    if (d > n_anchor)
        throw ConfigError("d", "latent size " + std::to_string(d) + " exceeds anchor count " +
                                   std::to_string(n_anchor));
    std::vector<std::size_t> pick(n_train);
    std::iota(pick.begin(), pick.end(), 0);
    if (n_anchor < n_train) {
        std::mt19937_64 rng(params.seed);
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(n_anchor);
        std::sort(pick.begin(), pick.end());
    }
    m.anchors_.resize(Eigen::Index(n_anchor), train.cols());
    for (std::size_t i = 0; i < n_anchor; ++i) m.anchors_.row(Eigen::Index(i)) = train.row(Eigen::Index(pick[i]));

    Eigen::MatrixXd gram = polynomial_kernel(m.anchors_, m.anchors_, m.gamma_, m.offset_, m.degree_);
    m.col_mean_ = gram.colwise().mean().transpose();
    m.total_mean_ = m.col_mean_.mean();
    Eigen::MatrixXd centred = gram;
    centred.rowwise() -= m.col_mean_.transpose();
    centred.colwise() -= m.col_mean_;
    centred.array() += m.total_mean_;
    centred = 0.5 * (centred + centred.transpose()).eval();

    auto eig = sym_eigen(centred);
    const double trace = gram.diagonal().cwiseAbs().sum();
    const double floor = 1e-12 * std::max(trace, 1e-300);
    if (eig.values.size() > 0 && eig.values.minCoeff() < -1e-8 * std::max(1.0, eig.values[0]))
        m.warnings_.push_back("centred kernel matrix is not positive semidefinite");

    const auto dd = Eigen::Index(d);
    m.eigenvalues_ = eig.values.head(dd);
    m.alpha_ = Eigen::MatrixXd::Zero(Eigen::Index(n_anchor), dd);
    Eigen::Index useful = 0;
    for (Eigen::Index k = 0; k < dd; ++k) {
        if (eig.values[k] > floor) {
            m.alpha_.col(k) = eig.vectors.col(k) / std::sqrt(eig.values[k]);
            ++useful;
        }
    }
    if (useful < dd)
        m.warnings_.push_back("only " + std::to_string(useful) + " of " + std::to_string(d) +
                              " kernel components are non-degenerate");

    Eigen::MatrixXd z = m.encode_impl(train);
    Eigen::MatrixXd design(z.rows(), z.cols() + 1);
    design << z, Eigen::VectorXd::Ones(z.rows());
    m.preimage_ = solve_least_squares(design, train, params.ridge);
    return m;
}

Eigen::MatrixXd KpcaModel::encode_impl(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd k = polynomial_kernel(x, anchors_, gamma_, offset_, degree_);
    Eigen::VectorXd row_mean = k.rowwise().mean();
    k.rowwise() -= col_mean_.transpose();
    k.colwise() -= row_mean;
    k.array() += total_mean_;
    return k * alpha_;
}

Eigen::MatrixXd KpcaModel::decode_impl(const Eigen::MatrixXd& z) const {
    const auto d = alpha_.cols();
    return (z * preimage_.topRows(d)).rowwise() + preimage_.row(d);
}

ModelSections KpcaModel::sections() const {
    ModelSections s;
    BinaryWriter w;
    w.i32(degree_);
    w.f64(offset_);
    w.f64(gamma_);
    w.matrix(anchors_);
    w.vector(col_mean_);
    w.f64(total_mean_);
    w.vector(eigenvalues_);
    w.matrix(alpha_);
    w.matrix(preimage_);
    s.add("kpca", std::move(w));
    return s;
}

KpcaModel KpcaModel::from_sections(const ModelSections& s) {
    auto r = s.get("kpca");
    KpcaModel m;
    m.degree_ = r.i32();
    m.offset_ = r.f64();
    m.gamma_ = r.f64();
    m.anchors_ = r.matrix();
    m.col_mean_ = r.vector();
    m.total_mean_ = r.f64();
    m.eigenvalues_ = r.vector();
    auto at = r.offset();
    m.alpha_ = r.matrix();
    m.preimage_ = r.matrix();
    if (m.alpha_.rows() != m.anchors_.rows() || m.col_mean_.size() != m.anchors_.rows() ||
        m.preimage_.rows() != m.alpha_.cols() + 1 || m.preimage_.cols() != m.anchors_.cols() ||
        m.degree_ < 1)
        throw ParseError(at, "inconsistent kpca model shapes");
    return m;
}

} // namespace hyperbench
