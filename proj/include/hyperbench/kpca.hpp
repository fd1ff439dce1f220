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

#ifndef HYPERBENCH_KPCA_HPP
#define HYPERBENCH_KPCA_HPP

#include <cstdint>

#include "hyperbench/compressor.hpp"

namespace hyperbench {

struct KpcaParams {
    int degree = 3;
    double offset = 1.0;
    /// Inner-product scale; 0 selects 1/n.
    double gamma = 0.0;
    std::size_t max_anchors = 2000;
    /// Ridge of the pre-image regression.
    double ridge = 1e-6;
    std::uint64_t seed = 0;
};

/// k(x, y) = (gamma x.y + offset)^degree for every row pair of a and b.
Eigen::MatrixXd polynomial_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  double gamma, double offset, int degree);

/*
 Kernel PCA with a polynomial kernel.

 The eigenproblem is solved on the centred Gram matrix of at most
 max_anchors training rows (uniform seeded subsample). Component k has
 coefficients alpha_k = u_k / sqrt(lambda_k), so encodings of training
 anchors equal the feature-space projections. Decoding is a ridge
 regression from [z, 1] to the spectrum, fitted on all training rows.
*/
class KpcaModel final : public Compressor {
public:
    static KpcaModel fit(const Eigen::MatrixXd& train, std::size_t d, const KpcaParams& params = {});
    static KpcaModel from_sections(const ModelSections& s);

    Method method() const override { return Method::Kpca; }
    std::size_t input_dim() const override { return std::size_t(anchors_.cols()); }
    std::size_t latent_dim() const override { return std::size_t(alpha_.cols()); }

    const Eigen::MatrixXd& anchors() const noexcept { return anchors_; }
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    double gamma() const noexcept { return gamma_; }

    ModelSections sections() const override;

protected:
    Eigen::MatrixXd encode_impl(const Eigen::MatrixXd& x) const override;
    Eigen::MatrixXd decode_impl(const Eigen::MatrixXd& z) const override;

private:
    int degree_ = 3;
    double offset_ = 1.0;
    double gamma_ = 0.0;
    Eigen::MatrixXd anchors_;      // m x n
    Eigen::VectorXd col_mean_;     // column means of the anchor Gram matrix
    double total_mean_ = 0.0;
    Eigen::VectorXd eigenvalues_;  // top d eigenvalues of the centred Gram matrix
    Eigen::MatrixXd alpha_;        // m x d
    Eigen::MatrixXd preimage_;     // (d + 1) x n, last row is the intercept
};

} // namespace hyperbench

#endif
