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

#include "hyperbench/pca.hpp"

#include "hyperbench/error.hpp"
#include "hyperbench/linalg.hpp"

namespace hyperbench {

PcaModel PcaModel::fit(const Eigen::MatrixXd& train, std::size_t d) {
    if (train.rows() < 2) throw NumericError("pca: need at least two training samples");
    if (d < 1 || d > std::size_t(train.cols()))
        throw ConfigError("d", "must lie in [1, " + std::to_string(train.cols()) + "]");
    auto cov = covariance(train);
    auto eig = sym_eigen(cov.matrix);
    PcaModel m;
    m.mean_ = cov.mean;
    m.basis_ = eig.vectors.leftCols(Eigen::Index(d));
    m.eigenvalues_ = eig.values;
    return m;
}

Eigen::MatrixXd PcaModel::encode_impl(const Eigen::MatrixXd& x) const {
    return (x.rowwise() - mean_.transpose()) * basis_;
}

Eigen::MatrixXd PcaModel::decode_unclamped(const Eigen::MatrixXd& z) const {
    return (z * basis_.transpose()).rowwise() + mean_.transpose();
}

Eigen::MatrixXd PcaModel::decode_impl(const Eigen::MatrixXd& z) const {
    return decode_unclamped(z);
}

ModelSections PcaModel::sections() const {
    ModelSections s;
    BinaryWriter w;
    w.vector(mean_);
    w.matrix(basis_);
    w.vector(eigenvalues_);
    s.add("pca", std::move(w));
    return s;
}

PcaModel PcaModel::from_sections(const ModelSections& s) {
    auto r = s.get("pca");
    PcaModel m;
    m.mean_ = r.vector();
    auto at = r.offset();
    m.basis_ = r.matrix();
    if (m.basis_.rows() != m.mean_.size() || m.basis_.cols() < 1)
        throw ParseError(at, "pca basis shape does not match mean");
    m.eigenvalues_ = r.vector();
    return m;
}

} // namespace hyperbench
