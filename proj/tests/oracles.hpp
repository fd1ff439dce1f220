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

// Independent reference implementations used as test oracles.

#ifndef HYPERBENCH_TESTS_ORACLES_HPP
#define HYPERBENCH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = std::vector<std::vector<long double>>;

inline Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
    return a;
}

inline Eigen::MatrixXd random_matrix(int r, int c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd a(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) a(i, j) = u(rng);
    return a;
}

// Cyclic Jacobi rotations in long double; returns eigenvalues sorted descending.
inline std::vector<long double> jacobi_eigenvalues(const Eigen::MatrixXd& a) {
    const int n = int(a.rows());
    Mat m(n, std::vector<long double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a(i, j);
    for (int sweep = 0; sweep < 100; ++sweep) {
        long double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) off += m[i][j] * m[i][j];
        if (off < 1e-36L) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(m[p][q]) < 1e-300L) continue;
                long double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                long double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    long double kp = m[k][p], kq = m[k][q];
                    m[k][p] = c * kp - s * kq;
                    m[k][q] = s * kp + c * kq;
                }
                for (int k = 0; k < n; ++k) {
                    long double pk = m[p][k], qk = m[q][k];
                    m[p][k] = c * pk - s * qk;
                    m[q][k] = s * pk + c * qk;
                }
            }
    }
    std::vector<long double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m[i][i];
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

// Solves (A^T A + ridge I) X = A^T B by Gaussian elimination in long double.
inline Eigen::MatrixXd normal_equations(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double ridge) {
    const int n = int(a.cols()), k = int(b.cols());
    Mat m(n, std::vector<long double>(n + k, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long double s = 0;
            for (int r = 0; r < a.rows(); ++r) s += (long double)a(r, i) * a(r, j);
            m[i][j] = s + (i == j ? ridge : 0);
        }
        for (int j = 0; j < k; ++j) {
            long double s = 0;
            for (int r = 0; r < a.rows(); ++r) s += (long double)a(r, i) * b(r, j);
            m[i][n + j] = s;
        }
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        std::swap(m[c], m[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            long double f = m[r][c] / m[c][c];
            for (int j = c; j < n + k; ++j) m[r][j] -= f * m[c][j];
        }
    }
    Eigen::MatrixXd x(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) x(i, j) = double(m[i][n + j] / m[i][i]);
    return x;
}

} // namespace oracle

#endif
