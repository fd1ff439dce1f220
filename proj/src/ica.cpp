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

#include "hyperbench/ica.hpp"

#include <cmath>
#include <random>

#include "hyperbench/error.hpp"
#include "hyperbench/linalg.hpp"

namespace hyperbench {

Eigen::MatrixXd symmetric_decorrelation(const Eigen::MatrixXd& w) {
    Eigen::MatrixXd wwt = w * w.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (wwt + wwt.transpose()));
    Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose() * w;
}

IcaModel IcaModel::fit(const Eigen::MatrixXd& train, std::size_t d, const IcaParams& params) {
    if (train.rows() < 2) throw NumericError("ica: need at least two training samples");
    if (d < 1 || d > std::size_t(train.cols()))
        throw ConfigError("d", "must lie in [1, " + std::to_string(train.cols()) + "]");
    if (params.max_iter < 1) throw ConfigError("max_iter", "must be >= 1");

    IcaModel m;
    auto cov = covariance(train);
    auto eig = sym_eigen(cov.matrix);
    m.mean_ = cov.mean;

    Eigen::Index rank = 0;
    while (rank < eig.values.size() && eig.values[rank] > params.eigen_floor) ++rank;
    if (rank == 0) throw NumericError("ica: training data has no non-degenerate dimension");
    const Eigen::Index r = std::min<Eigen::Index>(Eigen::Index(d), rank);
    if (r < Eigen::Index(d))
        m.warnings_.push_back("latent size reduced from " + std::to_string(d) + " to data rank " +
                              std::to_string(r));

    Eigen::VectorXd sd = eig.values.head(r).cwiseSqrt();
    m.whitening_ = sd.cwiseInverse().asDiagonal() * eig.vectors.leftCols(r).transpose();
    m.dewhitening_ = eig.vectors.leftCols(r) * sd.asDiagonal();

    const double n = double(train.rows());
    Eigen::MatrixXd white = m.whitening_ * (train.rowwise() - m.mean_.transpose()).transpose();

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd w(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) w(i, j) = gauss(rng);
    w = symmetric_decorrelation(w);

    for (int it = 1; it <= params.max_iter; ++it) {
        Eigen::MatrixXd g = (w * white).array().tanh();
        Eigen::VectorXd g_prime_mean = (1.0 - g.array().square()).rowwise().mean();
        Eigen::MatrixXd w_new = (g * white.transpose()) / n - g_prime_mean.asDiagonal() * w;
        w_new = symmetric_decorrelation(w_new);
        double lim = ((w_new * w.transpose()).diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff();
        w = std::move(w_new);
        m.iterations_ = it;
        if (lim < params.tol) {
            m.converged_ = true;
            break;
        }
    }
    if (!m.converged_)
        m.warnings_.push_back("FastICA did not converge in " + std::to_string(params.max_iter) +
                              " iterations");
    m.unmixing_ = std::move(w);
    m.finalize();
    return m;
}

void IcaModel::finalize() {
    encode_map_ = (unmixing_ * whitening_).transpose();
    decode_map_ = (dewhitening_ * unmixing_.transpose()).transpose();
}

Eigen::MatrixXd IcaModel::encode_impl(const Eigen::MatrixXd& x) const {
    return (x.rowwise() - mean_.transpose()) * encode_map_;
}

Eigen::MatrixXd IcaModel::decode_impl(const Eigen::MatrixXd& z) const {
    return (z * decode_map_).rowwise() + mean_.transpose();
}

ModelSections IcaModel::sections() const {
    ModelSections s;
    BinaryWriter w;
    w.vector(mean_);
    w.matrix(whitening_);
    w.matrix(dewhitening_);
    w.matrix(unmixing_);
    w.u8(converged_ ? 1 : 0);
    w.i32(iterations_);
    s.add("ica", std::move(w));
    return s;
}

IcaModel IcaModel::from_sections(const ModelSections& s) {
    auto r = s.get("ica");
    IcaModel m;
    m.mean_ = r.vector();
    auto at = r.offset();
    m.whitening_ = r.matrix();
    m.dewhitening_ = r.matrix();
    m.unmixing_ = r.matrix();
    m.converged_ = r.u8() != 0;
    m.iterations_ = r.i32();
    const auto rr = m.unmixing_.rows();
    if (rr < 1 || m.unmixing_.cols() != rr || m.whitening_.rows() != rr ||
        m.whitening_.cols() != m.mean_.size() || m.dewhitening_.rows() != m.mean_.size() ||
        m.dewhitening_.cols() != rr)
        throw ParseError(at, "inconsistent ica model shapes");
    if (!m.converged_) m.warnings_.push_back("FastICA did not converge");
    m.finalize();
    return m;
}

} // namespace hyperbench
