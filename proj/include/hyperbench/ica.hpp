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

#ifndef HYPERBENCH_ICA_HPP
#define HYPERBENCH_ICA_HPP

#include <cstdint>

#include "hyperbench/compressor.hpp"

namespace hyperbench {

struct IcaParams {
    int max_iter = 200;
    double tol = 1e-6;
    /// Whitening keeps covariance eigenvalues above this.
    double eigen_floor = 1e-10;
    std::uint64_t seed = 0;
};

/// Symmetric decorrelation (W W^T)^(-1/2) W.
Eigen::MatrixXd symmetric_decorrelation(const Eigen::MatrixXd& w);

// FastICA, symmetric fixed-point iteration with the logcosh contrast
// (g = tanh). Fitting never fails on non-convergence; `converged()` and a
// warning report it instead.
class IcaModel final : public Compressor {
public:
    static IcaModel fit(const Eigen::MatrixXd& train, std::size_t d, const IcaParams& params = {});
    static IcaModel from_sections(const ModelSections& s);

    Method method() const override { return Method::Ica; }
    std::size_t input_dim() const override { return std::size_t(mean_.size()); }
    std::size_t latent_dim() const override { return std::size_t(unmixing_.rows()); }

    bool converged() const noexcept { return converged_; }
    int iterations() const noexcept { return iterations_; }
    /// r x r rotation acting on whitened data; rows orthonormal.
    const Eigen::MatrixXd& unmixing() const noexcept { return unmixing_; }
    /// r x n whitening transform.
    const Eigen::MatrixXd& whitening() const noexcept { return whitening_; }

    ModelSections sections() const override;

protected:
    Eigen::MatrixXd encode_impl(const Eigen::MatrixXd& x) const override;
    Eigen::MatrixXd decode_impl(const Eigen::MatrixXd& z) const override;

private:
    void finalize();

    Eigen::VectorXd mean_;
    Eigen::MatrixXd whitening_;    // r x n
    Eigen::MatrixXd dewhitening_;  // n x r, right inverse of whitening_
    Eigen::MatrixXd unmixing_;     // r x r
    Eigen::MatrixXd encode_map_;   // n x r = (W K)^T
    Eigen::MatrixXd decode_map_;   // r x n = (K^+ W^T)^T
    bool converged_ = false;
    int iterations_ = 0;
};

} // namespace hyperbench

#endif
