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

#include "hyperbench/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "hyperbench/error.hpp"

namespace hyperbench {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) throw NumericError(std::string(what) + " contains non-finite values");
}

void canonicalize_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
        Eigen::Index arg = 0;
        vectors.col(k).cwiseAbs().maxCoeff(&arg);
        if (vectors(arg, k) < 0.0) vectors.col(k) = -vectors.col(k);
    }
}

SymEigen sym_eigen(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw NumericError("sym_eigen: matrix is not square");
    check_finite(a, "sym_eigen input");
    const Eigen::Index n = a.rows();
    if (n == 0) return {};
    const double scale = a.cwiseAbs().maxCoeff();
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * std::max(scale, 1e-300))
        throw NumericError("sym_eigen: matrix is not symmetric");

    Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw NumericError("sym_eigen: solver did not converge");

    SymEigen out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    canonicalize_signs(out.vectors);
    return out;
}

Covariance covariance(const Eigen::MatrixXd& samples) {
    if (samples.rows() < 2) throw NumericError("covariance: need at least two samples");
    check_finite(samples, "covariance input");
    Covariance c;
    c.mean = samples.colwise().mean().transpose();
    Eigen::MatrixXd centered = samples.rowwise() - c.mean.transpose();
    c.matrix = Eigen::MatrixXd(centered.cols(), centered.cols());
    c.matrix.setZero();
    c.matrix.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    c.matrix = c.matrix.selfadjointView<Eigen::Lower>();
    c.matrix /= double(samples.rows() - 1);
    return c;
}

Eigen::MatrixXd solve_least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                    double ridge) {
    if (a.rows() != b.rows()) throw NumericError("solve_least_squares: row count mismatch");
    if (ridge < 0.0 || !std::isfinite(ridge))
        throw NumericError("solve_least_squares: ridge must be finite and nonnegative");
    check_finite(a, "least-squares matrix");
    check_finite(b, "least-squares right-hand side");

    if (ridge == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        qr.setThreshold(1e-12);
        if (qr.rank() < a.cols())
            throw NumericError("solve_least_squares: singular system (rank " +
                               std::to_string(qr.rank()) + " < " + std::to_string(a.cols()) + ")");
        return qr.solve(b);
    }
    Eigen::MatrixXd gram = a.transpose() * a;
    gram.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw NumericError("solve_least_squares: singular system");
    return llt.solve(a.transpose() * b);
}

} // namespace hyperbench
