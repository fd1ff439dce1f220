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

#ifndef HYPERBENCH_LINALG_HPP
#define HYPERBENCH_LINALG_HPP

#include <Eigen/Dense>

namespace hyperbench {

// Dense kernels shared by the compressors. Samples are stored one per row.

struct SymEigen {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

/// Eigendecomposition of a symmetric matrix. Eigenvalues come out in
/// descending order and every eigenvector has its largest-magnitude entry
/// positive. Throws NumericError on non-square, non-symmetric (beyond 1e-9
/// relative) or non-finite input.
SymEigen sym_eigen(const Eigen::MatrixXd& a);

/// Flips the sign of each column so its largest-magnitude entry is positive.
void canonicalize_signs(Eigen::MatrixXd& vectors);

struct Covariance {
    Eigen::MatrixXd matrix;  // (1/(N-1)) sum (x-mu)(x-mu)^T
    Eigen::VectorXd mean;
};

/// Sample covariance of the rows of `samples`; needs at least two rows.
Covariance covariance(const Eigen::MatrixXd& samples);

/// argmin_X ||A X - B||_F^2 + ridge ||X||_F^2. Without a ridge term A must
/// have full column rank, otherwise NumericError("singular ...").
Eigen::MatrixXd solve_least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                    double ridge = 0.0);

/// Throws NumericError if any entry is NaN or infinite.
void check_finite(const Eigen::MatrixXd& m, const char* what);

} // namespace hyperbench

#endif
