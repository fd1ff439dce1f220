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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperbench/error.hpp"
#include "hyperbench/ica.hpp"
#include "hyperbench/kpca.hpp"
#include "hyperbench/models.hpp"
#include "hyperbench/pca.hpp"
#include "oracles.hpp"

using namespace hyperbench;

namespace {

Eigen::MatrixXd uniform01(int rows, int cols, std::uint64_t seed) {
    return (oracle::random_matrix(rows, cols, seed).array() + 1.0) / 2.0;
}

// Rows mix a few smooth profiles, so the data sits near a low-dimensional subspace.
Eigen::MatrixXd spectra_like(int rows, int bands, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd x(rows, bands);
    for (int i = 0; i < rows; ++i) {
        double a = u(rng), b = u(rng), c = u(rng);
        for (int j = 0; j < bands; ++j) {
            double t = double(j) / bands;
            x(i, j) = 0.1 + 0.3 * a * std::sin(3 * t) + 0.2 * b * t * t + 0.2 * c * std::exp(-8 * (t - 0.5) * (t - 0.5)) +
                      0.01 * u(rng);
        }
    }
    return x;
}

double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd x = a.array() - a.mean(), y = b.array() - b.mean();
    return x.dot(y) / (x.norm() * y.norm());
}

} // namespace

TEST_CASE("dims_for_rate") {
    CHECK(dims_for_rate(301, 95) == 15);
    CHECK(dims_for_rate(301, 98) == 6);
    CHECK(dims_for_rate(301, 99) == 3);
    CHECK(dims_for_rate(10, 50) == 5);
    CHECK(dims_for_rate(2, 99) == 1);
    for (std::size_t n : {3u, 10u, 301u}) {
        for (int r = 1; r <= 99; ++r) {
            CHECK(dims_for_rate(n, r) >= 1);
            if (r > 1) CHECK(dims_for_rate(n, r) <= dims_for_rate(n, r - 1));
        }
    }
    CHECK_THROWS_AS(dims_for_rate(301, 0), ConfigError);
    CHECK_THROWS_AS(dims_for_rate(301, 100), ConfigError);
}

TEST_CASE("pca with a full basis reproduces training points") {
    auto x = uniform01(30, 8, 1);
    auto m = PcaModel::fit(x, 8);
    CHECK((m.decode_unclamped(m.encode(x)) - x).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("pca on rank-one data") {
    Eigen::MatrixXd x(4, 2);
    x << 0.1, 0.5, 0.3, 0.5, 0.7, 0.5, 0.9, 0.5;
    auto m = PcaModel::fit(x, 1);
    CHECK(std::abs(std::abs(m.basis()(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(m.basis()(1, 0)) < 1e-12);
    CHECK((m.decode(m.encode(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pca training mse equals the discarded eigenvalue mean") {
    const int N = 50, n = 20;
    auto x = uniform01(N, n, 2);
    // oracle spectrum of the 1/(N-1) covariance
    Eigen::VectorXd mu = x.colwise().mean();
    Eigen::MatrixXd xc = x.rowwise() - mu.transpose();
    auto lambda = oracle::jacobi_eigenvalues(xc.transpose() * xc / double(N - 1));
    double prev = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= n; ++d) {
        auto m = PcaModel::fit(x, std::size_t(d));
        double mse = (m.decode_unclamped(m.encode(x)) - x).squaredNorm() / double(N * n);
        long double tail = 0;
        for (int i = d; i < n; ++i) tail += lambda[i];
        // mean squared residual uses 1/N while the covariance uses 1/(N-1)
        double expect = double(tail) / n * double(N - 1) / N;
        CHECK(std::abs(mse - expect) <= 1e-8);
        CHECK(mse <= prev + 1e-15);
        prev = mse;
    }
}

TEST_CASE("pca on identical points encodes to zero") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Constant(6, 5, 0.4);
    auto m = PcaModel::fit(x, 2);
    CHECK(m.eigenvalues().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.encode(x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m.decode(m.encode(x)) - x).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("polynomial kernel value") {
    Eigen::MatrixXd a(1, 2), b(1, 2);
    a << 1, 2;
    b << 3, 4;
    CHECK(polynomial_kernel(a, b, 1.0, 1.0, 2)(0, 0) == doctest::Approx(144.0));
}

TEST_CASE("kpca with a linear kernel matches pca up to sign") {
    auto x = spectra_like(80, 12, 3);
    KpcaParams p;
    p.degree = 1;
    p.offset = 0.0;
    p.gamma = 1.0;
    auto k = KpcaModel::fit(x, 3, p);
    auto pca = PcaModel::fit(x, 3);
    Eigen::MatrixXd zk = k.encode(x), zp = pca.encode(x);
    for (int c = 0; c < 3; ++c) {
        double sign = zk.col(c).dot(zp.col(c)) >= 0 ? 1.0 : -1.0;
        CHECK((sign * zk.col(c) - zp.col(c)).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("kpca on identical points") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Constant(10, 4, 0.3);
    auto k = KpcaModel::fit(x, 2);
    CHECK(k.eigenvalues().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(k.encode(x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kpca errors and anchor cap") {
    auto x = spectra_like(20, 10, 4);
    KpcaParams p;
    p.max_anchors = 8;
    CHECK_THROWS_AS(KpcaModel::fit(x, 9, p), ConfigError);
    auto k = KpcaModel::fit(x, 4, p);
    CHECK(k.anchors().rows() == 8);
    CHECK(k.gamma() == doctest::Approx(0.1));
}

TEST_CASE("ica separates two mixed uniform sources") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int N = 2000;
    Eigen::MatrixXd s(N, 2), a(2, 2);
    a << 2, 1, 1, 1;
    for (int i = 0; i < N; ++i) s.row(i) << u(rng), u(rng);
    Eigen::MatrixXd x = s * a.transpose();
    auto m = IcaModel::fit(x, 2);
    CHECK(m.converged());
    Eigen::MatrixXd z = m.encode(x);
    double c00 = std::abs(correlation(z.col(0), s.col(0))), c01 = std::abs(correlation(z.col(0), s.col(1)));
    double c10 = std::abs(correlation(z.col(1), s.col(0))), c11 = std::abs(correlation(z.col(1), s.col(1)));
    CHECK(std::max(std::min(c00, c11), std::min(c01, c10)) > 0.95);
}

TEST_CASE("ica on white axis-aligned data is a signed permutation") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-std::sqrt(3.0), std::sqrt(3.0));
    Eigen::MatrixXd x(4000, 3);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < 3; ++j) x(i, j) = u(rng);
    auto m = IcaModel::fit(x, 3);
    Eigen::MatrixXd total = m.unmixing() * m.whitening();
    for (int r = 0; r < 3; ++r) {
        Eigen::VectorXd row = total.row(r).cwiseAbs();
        row /= row.norm();
        CHECK(row.maxCoeff() > 0.98);
    }
}

TEST_CASE("ica warns when it cannot converge on gaussian data") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd x(3000, 6);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < 6; ++j) x(i, j) = g(rng);
    auto m = IcaModel::fit(x, 6);
    CHECK_FALSE(m.converged());
    CHECK_FALSE(m.warnings().empty());
}

TEST_CASE("ica reduces the latent size to the data rank") {
    auto x = uniform01(40, 3, 8);
    Eigen::MatrixXd wide(40, 6);
    wide << x, x;  // rank 3
    auto m = IcaModel::fit(wide, 5);
    CHECK(m.latent_dim() == 3);
    CHECK_FALSE(m.warnings().empty());
}

TEST_CASE("linear compressors decode into [0,1] and are deterministic") {
    auto x = spectra_like(60, 16, 9);
    Eigen::MatrixXd outside = uniform01(10, 16, 10) * 3.0;
    for (auto method : {Method::Pca, Method::Kpca, Method::Ica}) {
        auto a = fit_compressor(method, x, {}, 4, 11);
        auto b = fit_compressor(method, x, {}, 4, 11);
        CHECK(a->encode(x) == b->encode(x));
        for (const auto& probe : {x, outside}) {
            Eigen::MatrixXd r = a->decode(a->encode(probe));
            CHECK(r.allFinite());
            CHECK(r.minCoeff() >= 0.0);
            CHECK(r.maxCoeff() <= 1.0);
        }
    }
}

TEST_CASE("model files round trip") {
    auto x = spectra_like(60, 16, 12);
    for (auto method : {Method::Pca, Method::Kpca, Method::Ica}) {
        auto m = fit_compressor(method, x, {}, 5, 13);
        auto bytes = serialize_model(*m);
        CHECK(bytes.substr(0, 5) == "HCMP1");
        auto back = deserialize_model(bytes);
        CHECK(back->method() == method);
        CHECK(back->latent_dim() == m->latent_dim());
        CHECK(back->encode(x) == m->encode(x));
        CHECK(back->decode(m->encode(x)) == m->decode(m->encode(x)));
        CHECK(serialize_model(*back) == bytes);

        auto bad = bytes;
        bad[1] = 'X';
        try {
            deserialize_model(bad);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.offset() == 0);
        }
        CHECK_THROWS_AS(deserialize_model(bytes.substr(0, bytes.size() - 3)), ParseError);
    }
}

TEST_CASE("encode and decode check shapes") {
    auto x = spectra_like(30, 8, 14);
    auto m = PcaModel::fit(x, 3);
    CHECK_THROWS_AS(m.encode(Eigen::MatrixXd::Zero(2, 7)), NumericError);
    CHECK_THROWS_AS(m.decode(Eigen::MatrixXd::Zero(2, 4)), NumericError);
    Eigen::MatrixXd nan = x.topRows(1);
    nan(0, 0) = NAN;
    CHECK_THROWS_AS(m.encode(nan), NumericError);
}
