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

#ifndef HYPERBENCH_PCA_HPP
#define HYPERBENCH_PCA_HPP

#include "hyperbench/compressor.hpp"

namespace hyperbench {

/// Projection on the top-d eigenvectors of the training covariance.
class PcaModel final : public Compressor {
public:
    static PcaModel fit(const Eigen::MatrixXd& train, std::size_t d);
    static PcaModel from_sections(const ModelSections& s);

    Method method() const override { return Method::Pca; }
    std::size_t input_dim() const override { return std::size_t(mean_.size()); }
    std::size_t latent_dim() const override { return std::size_t(basis_.cols()); }

    /// W z + mu without clamping.
    Eigen::MatrixXd decode_unclamped(const Eigen::MatrixXd& z) const;

    const Eigen::VectorXd& mean() const noexcept { return mean_; }
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }
    /// Full covariance spectrum, descending.
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

    ModelSections sections() const override;

protected:
    Eigen::MatrixXd encode_impl(const Eigen::MatrixXd& x) const override;
    Eigen::MatrixXd decode_impl(const Eigen::MatrixXd& z) const override;

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd basis_;  // n x d, orthonormal columns
    Eigen::VectorXd eigenvalues_;
};

} // namespace hyperbench

#endif
