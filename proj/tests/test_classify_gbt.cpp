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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "hyperbench/error.hpp"
#include "hyperbench/gbt.hpp"

using namespace hyperbench;

namespace {

double accuracy(const GbtModel& m, const Eigen::MatrixXd& x, const std::vector<int>& y) {
    auto p = m.predict_labels(x);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ok += p[i] == y[i];
    return double(ok) / double(y.size());
}

struct RootSplit {
    double threshold = 0.0;
    double gain = 0.0;
    bool found = false;
};

// Brute-force root split of the first tree for class 0, starting from zero
// logits over C classes: every threshold between distinct sorted values.
RootSplit enumerate_root(const std::vector<double>& x, const std::vector<int>& y, int classes,
                         const GbtConfig& cfg) {
    const double p = 1.0 / classes;
    RootSplit best;
    std::vector<double> cuts = x;
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double gl = 0, hl = 0, gr = 0, hr = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double g = p - (y[i] == 0 ? 1.0 : 0.0), h = p * (1 - p);
            if (x[i] <= cuts[k]) gl += g, hl += h;
            else gr += g, hr += h;
        }
        if (hl < cfg.min_child_weight || hr < cfg.min_child_weight) continue;
        double gain = 0.5 * (gl * gl / (hl + cfg.reg_lambda) + gr * gr / (hr + cfg.reg_lambda) -
                             (gl + gr) * (gl + gr) / (hl + hr + cfg.reg_lambda));
        if (gain > cfg.min_split_gain && (!best.found || gain > best.gain))
            best = {cuts[k], gain, true};
    }
    return best;
}

} // namespace

TEST_CASE("split gain by hand on a four-sample node") {
    // g = (-0.5, -0.5, 0.5, 0.5), h = 0.25 each, lambda = 1, split 2 | 2
    // 1/2 [ 1/1.5 + 1/1.5 - 0/2 ] = 2/3
    CHECK(std::abs(split_gain(-1.0, 0.5, 1.0, 0.5, 1.0) - 2.0 / 3.0) < 1e-12);
    // split 1 | 3: GL=-0.5 HL=0.25, GR=0.5 HR=0.75
    double want = 0.5 * (0.25 / 1.25 + 0.25 / 1.75 - 0.0);
    CHECK(std::abs(split_gain(-0.5, 0.25, 0.5, 0.75, 1.0) - want) < 1e-12);
}

TEST_CASE("root split matches threshold enumeration") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> xs;
    std::vector<int> ys;
    for (int i = 0; i < 120; ++i) {
        int y = i % 2;
        ys.push_back(y);
        xs.push_back(n(rng) + (y ? 1.2 : -0.3));
    }
    Eigen::MatrixXd x = Eigen::Map<Eigen::VectorXd>(xs.data(), Eigen::Index(xs.size()));
    GbtConfig cfg;
    cfg.n_rounds = 1;
    auto m = gbt_train(x, ys, cfg);
    auto ref = enumerate_root(xs, ys, 2, cfg);
    REQUIRE(ref.found);
    const auto& root = m.trees()[0][0].nodes[0];
    CHECK(root.feature == 0);
    CHECK(root.threshold == ref.threshold);
}

TEST_CASE("separable one-dimensional classes") {
    Eigen::MatrixXd x(40, 1);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) {
        x(i, 0) = i;
        y[std::size_t(i)] = i < 17 ? 0 : 1;
    }
    GbtConfig cfg;
    cfg.n_rounds = 1;
    cfg.max_depth = 1;
    auto m = gbt_train(x, y, cfg);
    CHECK(m.trees()[0][0].nodes[0].threshold == 16.0);
    CHECK(accuracy(m, x, y) == 1.0);
    std::vector<double> probe{16.5};
    CHECK(m.predict(probe).label == 1);
}

TEST_CASE("xor point clusters of unequal size") {
    const int sizes[4] = {30, 70, 45, 55};
    const double cx[4] = {0, 1, 0, 1}, cy[4] = {0, 1, 1, 0};
    Eigen::MatrixXd x(200, 2);
    std::vector<int> y;
    int r = 0;
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < sizes[c]; ++i, ++r) {
            x(r, 0) = cx[c];
            x(r, 1) = cy[c];
            y.push_back(c < 2 ? 0 : 1);
        }
    for (int depth : {2, 10}) {
        GbtConfig cfg;
        cfg.max_depth = depth;
        CHECK(accuracy(gbt_train(x, y, cfg), x, y) == 1.0);
    }
}

TEST_CASE("constant features give chance accuracy") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Constant(100, 3, 0.4);
    std::vector<int> y(100);
    for (int i = 0; i < 100; ++i) y[std::size_t(i)] = i % 2;
    GbtConfig cfg;
    cfg.n_rounds = 1;
    cfg.max_depth = 1;
    auto m = gbt_train(x, y, cfg);
    for (const auto& round : m.trees())
        for (const auto& t : round) CHECK(t.nodes.size() == 1);
    CHECK(accuracy(m, x, y) == 0.5);
    auto p = m.predict(std::vector<double>{0.4, 0.4, 0.4});
    CHECK(p.label == 0);
}

TEST_CASE("probabilities form a distribution") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::MatrixXd x(150, 4);
    std::vector<int> y(150);
    for (int i = 0; i < 150; ++i) {
        for (int j = 0; j < 4; ++j) x(i, j) = u(rng);
        y[std::size_t(i)] = int(x(i, 0) * 3);
    }
    auto m = gbt_train(x, y, GbtConfig{});
    CHECK(m.n_classes() == 3);
    for (int i = 0; i < 150; ++i) {
        std::vector<double> row(4);
        for (int j = 0; j < 4; ++j) row[std::size_t(j)] = x(i, j);
        auto p = m.predict(row);
        double s = std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0);
        CHECK(std::abs(s - 1.0) < 1e-12);
        for (double v : p.probabilities) CHECK((v >= 0.0 && v <= 1.0));
    }
}

TEST_CASE("empty ensemble predicts uniformly") {
    GbtModel m(4, 2);
    auto p = m.predict(std::vector<double>{0.1, 0.2});
    for (double v : p.probabilities) CHECK(v == 0.25);
    CHECK(p.label == 0);
    CHECK_THROWS_AS(m.predict(std::vector<double>{0.1}), NumericError);
}

TEST_CASE("monotone feature transforms do not change predictions") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.01, 1);
    Eigen::MatrixXd x(200, 3), test(80, 3);
    std::vector<int> y(200);
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 3; ++j) x(i, j) = u(rng);
        y[std::size_t(i)] = (x(i, 0) + 0.5 * x(i, 2) > 0.8) + (x(i, 1) > 0.7);
    }
    for (int i = 0; i < 80; ++i)
        for (int j = 0; j < 3; ++j) test(i, j) = u(rng);
    auto warp = [](Eigen::MatrixXd m) {
        m.col(1) = m.col(1).array().log() * 5.0 + 2.0;
        return m;
    };
    auto a = gbt_train(x, y, GbtConfig{});
    auto b = gbt_train(warp(x), y, GbtConfig{});
    CHECK(a.predict_labels(test) == b.predict_labels(warp(test)));
}

TEST_CASE("max depth bounds every tree") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::MatrixXd x(300, 5);
    std::vector<int> y(300);
    for (int i = 0; i < 300; ++i) {
        for (int j = 0; j < 5; ++j) x(i, j) = u(rng);
        y[std::size_t(i)] = int(u(rng) * 3);
    }
    for (int depth : {1, 3, 6}) {
        GbtConfig cfg;
        cfg.max_depth = depth;
        cfg.n_rounds = 3;
        auto m = gbt_train(x, y, cfg);
        CHECK(m.n_rounds() == 3);
        for (const auto& round : m.trees()) {
            CHECK(round.size() == 3);
            for (const auto& t : round) CHECK(t.depth() <= depth);
        }
    }
}

TEST_CASE("serialization is byte-identical and round trips") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::MatrixXd x(100, 3);
    std::vector<int> y(100);
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 3; ++j) x(i, j) = u(rng);
        y[std::size_t(i)] = x(i, 1) > 0.5;
    }
    auto a = gbt_train(x, y, GbtConfig{});
    auto b = gbt_train(x, y, GbtConfig{});
    CHECK(a.serialize() == b.serialize());
    auto back = GbtModel::deserialize(a.serialize());
    CHECK(back == a);
    CHECK(back.predict_labels(x) == a.predict_labels(x));

    auto path = std::filesystem::temp_directory_path() / "hyperbench_gbt_test.bin";
    save_gbt(a, path);
    CHECK(load_gbt(path) == a);
    std::filesystem::remove(path);

    auto bytes = a.serialize();
    bytes[0] = 'X';
    try {
        GbtModel::deserialize(bytes);
        FAIL("bad magic accepted");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
    }
    CHECK_THROWS_AS(GbtModel::deserialize(a.serialize().substr(0, 40)), ParseError);
    CHECK_THROWS_AS(GbtModel::deserialize(a.serialize() + "x"), ParseError);
}

TEST_CASE("training input errors") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, 2);
    std::vector<int> y{0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    CHECK_THROWS_AS(gbt_train(Eigen::MatrixXd(0, 2), std::vector<int>{}, GbtConfig{}), NumericError);
    CHECK_THROWS_AS(gbt_train(x, std::vector<int>(9, 0), GbtConfig{}), NumericError);
    CHECK_THROWS_AS(gbt_train(x, std::vector<int>(10, 0), GbtConfig{}), NumericError);
    auto bad = y;
    bad[3] = -1;
    CHECK_THROWS_AS(gbt_train(x, bad, GbtConfig{}), NumericError);
    CHECK_THROWS_AS(gbt_train(x, y, 1, GbtConfig{}), NumericError);
    auto nan = x;
    nan(4, 1) = NAN;
    CHECK_THROWS_AS(gbt_train(nan, y, GbtConfig{}), NumericError);
    GbtConfig cfg;
    cfg.n_rounds = 0;
    try {
        gbt_train(x, y, cfg);
        FAIL("accepted zero rounds");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "n_rounds");
    }
    cfg = GbtConfig{};
    cfg.max_depth = 0;
    CHECK_THROWS_AS(gbt_train(x, y, cfg), ConfigError);
}
