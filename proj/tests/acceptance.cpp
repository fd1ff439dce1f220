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

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Uses the shipped synthetic presets, so results
// depend only on the code and the fixed seeds below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "hyperbench/autoencoder.hpp"
#include "hyperbench/compressor.hpp"
#include "hyperbench/ica.hpp"
#include "hyperbench/kpca.hpp"
#include "hyperbench/metrics.hpp"
#include "hyperbench/pca.hpp"
#include "hyperbench/sweep.hpp"
#include "mlp_oracles.hpp"
#include "oracles.hpp"

using namespace hyperbench;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

// Runs `body`, turning an exception into a failed line.
void criterion(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const SweepResult& find(const std::vector<SweepResult>& rs, const std::string& method, int rate) {
    for (const auto& r : rs)
        if (r.method == method && r.rate == rate) return r;
    throw std::runtime_error("no result for " + method + " at " + std::to_string(rate));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd x = a.array() - a.mean(), y = b.array() - b.mean();
    return x.dot(y) / (x.norm() * y.norm());
}

// ---------------------------------------------------------------------------

void grid_cardinality() {
    // Full 1..98 grid on three small scenes with cheap network settings.
    SweepPlan plan;
    plan.datasets = {"synthetic:suburban:200", "synthetic:urban:200", "synthetic:forest:200"};
    plan.fit.ae.epochs = 1;
    plan.fit.ae.restarts = 1;
    plan.fit.ae.hidden_ae = 16;
    plan.record_timings = false;
    plan.seed = 7;
    auto t0 = std::chrono::steady_clock::now();
    auto grid = run_sweep(plan);
    const double grid_s = seconds_since(t0);
    std::size_t failed = 0;
    for (const auto& r : grid) failed += r.failed();

    // Smoke grid at full settings.
    SweepPlan smoke;
    smoke.datasets = {"synthetic:acceptance:2000"};
    smoke.rates = {50, 80, 90, 95, 97, 98};
    smoke.seed = 7;
    t0 = std::chrono::steady_clock::now();
    auto s = run_sweep(smoke);
    const double smoke_s = seconds_since(t0);

    bool pass = grid.size() == 1470 && s.size() == 30 && smoke_s < 600.0;
    report(1, pass,
           fmt("grid rows=%zu (expect 1470, %zu failed jobs, %.0f s); smoke grid %zu jobs in %.1f s (limit 600 s)",
               grid.size(), failed, grid_s, s.size(), smoke_s));
}

void rate_mapping() {
    auto a = dims_for_rate(301, 95), b = dims_for_rate(301, 98);
    report(2, a == 15 && b == 6, fmt("(301,95)->%zu (expect 15), (301,98)->%zu (expect 6)", a, b));
}

void pca_exactness() {
    const int N = 50, n = 20;
    Eigen::MatrixXd x = (oracle::random_matrix(N, n, 2024).array() + 1.0) / 2.0;
    Eigen::VectorXd mu = x.colwise().mean();
    Eigen::MatrixXd xc = x.rowwise() - mu.transpose();
    auto lambda = oracle::jacobi_eigenvalues(xc.transpose() * xc / double(N - 1));
    double worst = 0.0;
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= n; ++d) {
        auto m = PcaModel::fit(x, std::size_t(d));
        double mse = (m.decode_unclamped(m.encode(x)) - x).squaredNorm() / double(N * n);
        long double tail = 0;
        for (int i = d; i < n; ++i) tail += lambda[i];
        double expect = double(tail) / n * double(N - 1) / N;
        worst = std::max(worst, std::abs(mse - expect));
        if (mse > prev) monotone = false;
        prev = mse;
    }
    report(3, worst <= 1e-8 && monotone,
           fmt("max |mse - tail eigenvalue mean| = %.3e (limit 1e-8), non-increasing in d: %s", worst,
               monotone ? "yes" : "no"));
}

void gradient_check() {
    const std::vector<std::vector<std::size_t>> shapes = {
        {3, 2, 3}, {5, 3, 5}, {6, 4, 2, 4, 6}, {10, 8, 4, 8, 10}};
    double worst = 0.0;
    std::size_t params = 0;
    std::uint64_t seed = 1;
    for (const auto& s : shapes)
        for (int rep = 0; rep < 3; ++rep, ++seed) {
            auto m = oracle::random_mlp(s, seed);
            Eigen::MatrixXd x = (oracle::random_matrix(int(s.front()), 12, seed + 100).array() + 1.0) / 2.0;
            auto g = oracle::finite_difference_check(m, x, x, 1e-5);
            worst = std::max(worst, g.worst_rel);
            params += g.checked;
        }
    report(4, worst < 1e-4,
           fmt("%zu parameters over 12 nets up to 10-8-4-8-10, worst relative error %.3e (limit 1e-4)",
               params, worst));
}

struct AcceptanceRun {
    std::vector<SweepResult> results;
};

AcceptanceRun acceptance_sweep() {
    SweepPlan plan;
    plan.datasets = {"synthetic:acceptance"};
    plan.rates = {50, 80, 95, 98};
    plan.include_rgb_baseline = true;
    plan.include_uncompressed_baseline = true;
    plan.seed = 42;
    return {run_sweep(plan)};
}

void mse_trend(const AcceptanceRun& run) {
    const auto& rs = run.results;
    auto ratio = [&](const char* m) { return *find(rs, m, 98).mse / *find(rs, m, 50).mse; };
    const double pca = ratio("pca"), ica = ratio("ica"), ae = ratio("ae");
    report(5, pca >= 5.0 && ica >= 5.0 && ae <= 3.0,
           fmt("mse(98)/mse(50): pca %.2f (>= 5), ica %.2f (>= 5), ae %.2f (<= 3)", pca, ica, ae));
}

void classification_floor(const AcceptanceRun& run) {
    const auto& rs = run.results;
    const double raw = find(rs, "raw", 0).macro_f1;
    bool pass = true;
    std::string detail = fmt("uncompressed %.4f;", raw);
    for (auto m : kAllMethods) {
        const std::string name(method_name(m));
        const auto& r80 = find(rs, name, 80);
        const auto& r95 = find(rs, name, 95);
        const bool ok = !r80.failed() && !r95.failed() && r80.macro_f1 >= 0.85 && raw - r95.macro_f1 <= 0.05;
        pass = pass && ok;
        detail += fmt(" %s f1@80 %.4f f1@95 %.4f%s;", name.c_str(), r80.macro_f1, r95.macro_f1, ok ? "" : " (miss)");
    }
    report(6, pass, detail + " need f1@80 >= 0.85 and f1@95 >= uncompressed - 0.05");
}

void rgb_gap(const AcceptanceRun& run) {
    const double raw = find(run.results, "raw", 0).macro_f1;
    const double rgb = find(run.results, "rgb", 0).macro_f1;
    report(7, raw - rgb >= 0.01, fmt("uncompressed %.4f - rgb %.4f = %.4f (>= 0.01)", raw, rgb, raw - rgb));
}

void snr_claim(const AcceptanceRun& run) {
    const double raw = *find(run.results, "raw", 0).snr_db;
    double worst = std::numeric_limits<double>::infinity();
    std::string detail;
    for (int rate : {50, 80, 95, 98}) {
        const double ae = *find(run.results, "ae", rate).snr_db;
        worst = std::min(worst, ae);
        detail += fmt(" ae@%d %.2f dB;", rate, ae);
    }
    report(8, worst >= raw, fmt("raw test spectra %.2f dB;", raw) + detail + " need every ae value >= raw");
}

void restart_protocol() {
    auto ds = generate_synthetic(preset_config("acceptance"));
    auto train = ds.matrix(Split::Train), val = ds.matrix(Split::Validation);
    double spread[2] = {0, 0};
    bool protocol = true;
    for (int k = 0; k < 2; ++k) {
        AeConfig cfg;
        cfg.variant = k == 0 ? AeVariant::Ae : AeVariant::Dae;
        cfg.latent_dim = dims_for_rate(ds.n_bands, 95);
        cfg.seed = 42;
        auto m = ae_train(train, val, cfg);
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        std::size_t argmin = 0;
        for (std::size_t i = 0; i < m.histories().size(); ++i) {
            const double v = m.histories()[i].final_val_mse();
            if (v < lo) lo = v, argmin = i;
            hi = std::max(hi, v);
        }
        protocol = protocol && m.histories().size() == 10 && m.chosen_restart() == argmin;
        spread[k] = hi - lo;
    }
    report(9, protocol && spread[1] >= spread[0],
           fmt("10 histories with min-val restart chosen: %s; val mse spread ae %.3e, dae %.3e (dae >= ae)",
               protocol ? "yes" : "no", spread[0], spread[1]));
}

void metric_formulas() {
    struct Case {
        std::vector<std::vector<std::size_t>> confusion;  // [truth][predicted]
        std::vector<std::array<double, 3>> expect;         // precision, recall, f1 by hand
    };
    const std::vector<Case> cases = {
        // perfect 2-class
        {{{3, 0}, {0, 2}}, {{{1, 1, 1}}, {{1, 1, 1}}}},
        // tp=5 fp=2 fn=1 for class 0; tp=3 fp=1 fn=2 for class 1
        {{{5, 1}, {2, 3}}, {{{5.0 / 7, 5.0 / 6, 10.0 / 13}}, {{3.0 / 4, 3.0 / 5, 2.0 / 3}}}},
        // class 2 never predicted: precision 0/0 -> 0
        {{{4, 1, 0}, {0, 3, 0}, {2, 1, 0}},
         {{{4.0 / 6, 4.0 / 5, 8.0 / 11}}, {{3.0 / 5, 1, 3.0 / 4}}, {{0, 0, 0}}}},
        // class 1 never true but predicted: recall 0/0 -> 0
        {{{2, 2, 0}, {0, 0, 0}, {0, 1, 3}}, {{{1, 1.0 / 2, 2.0 / 3}}, {{0, 0, 0}}, {{1, 3.0 / 4, 6.0 / 7}}}},
        // class 1 absent from both: every ratio 0/0 -> 0
        {{{1, 0, 1}, {0, 0, 0}, {1, 0, 1}}, {{{1.0 / 2, 1.0 / 2, 1.0 / 2}}, {{0, 0, 0}}, {{1.0 / 2, 1.0 / 2, 1.0 / 2}}}},
    };
    double worst = 0.0;
    bool counts_ok = true;
    for (const auto& c : cases) {
        std::vector<int> pred, truth;
        for (std::size_t t = 0; t < c.confusion.size(); ++t)
            for (std::size_t p = 0; p < c.confusion[t].size(); ++p)
                for (std::size_t k = 0; k < c.confusion[t][p]; ++k) {
                    truth.push_back(int(t));
                    pred.push_back(int(p));
                }
        auto rep = classification_scores(pred, truth, c.confusion.size());
        counts_ok = counts_ok && rep.confusion == c.confusion;
        for (std::size_t k = 0; k < c.expect.size(); ++k) {
            worst = std::max(worst, std::abs(rep.per_class[k].precision - c.expect[k][0]));
            worst = std::max(worst, std::abs(rep.per_class[k].recall - c.expect[k][1]));
            worst = std::max(worst, std::abs(rep.per_class[k].f1 - c.expect[k][2]));
        }
    }
    report(10, worst <= 1e-12 && counts_ok,
           fmt("5 confusion matrices, max deviation from hand values %.3e (limit 1e-12), confusion kept: %s", worst,
               counts_ok ? "yes" : "no"));
}

void determinism() {
    SweepPlan plan;
    plan.datasets = {"synthetic:acceptance:600", "synthetic:forest:300"};
    plan.rates = {90, 98};
    plan.include_rgb_baseline = true;
    plan.include_uncompressed_baseline = true;
    plan.fit.ae.epochs = 3;
    plan.fit.ae.restarts = 2;
    plan.record_timings = false;
    plan.seed = 11;
    const auto base = fs::temp_directory_path() / "hyperbench_acceptance";
    std::vector<std::string> csv;
    for (std::size_t workers : {1, 3, 1}) {
        plan.parallelism = workers;
        auto dir = base / ("w" + std::to_string(csv.size()));
        fs::remove_all(dir);
        emit_reports(run_sweep(plan), dir);
        csv.push_back(slurp(dir / "results.csv"));
    }
    fs::remove_all(base);
    const bool same = csv[0] == csv[1] && csv[0] == csv[2];
    report(11, same && csv[0].size() > 0,
           fmt("results.csv (%zu bytes) identical across runs with 1, 3 and 1 workers: %s", csv[0].size(),
               same ? "yes" : "no"));
}

void ica_and_kpca() {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int N = 2000;
    Eigen::MatrixXd s(N, 2), a(2, 2);
    a << 1.0, 0.6, 0.4, 1.0;
    for (int i = 0; i < N; ++i) s.row(i) << u(rng), std::copysign(std::pow(std::abs(u(rng)), 0.5), u(rng));
    Eigen::MatrixXd x = s * a.transpose();
    auto ica = IcaModel::fit(x, 2);
    Eigen::MatrixXd z = ica.encode(x);
    double c[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = std::abs(correlation(z.col(i), s.col(j)));
    const double rec = std::max(std::min(c[0][0], c[1][1]), std::min(c[0][1], c[1][0]));

    auto ds = generate_synthetic(preset_config("acceptance", 300));
    Eigen::MatrixXd xs = ds.matrix(Split::Train);
    KpcaParams p;
    p.degree = 1;
    p.offset = 0.0;
    p.gamma = 1.0;
    const std::size_t d = 6;
    auto kp = KpcaModel::fit(xs, d, p);
    auto pca = PcaModel::fit(xs, d);
    Eigen::MatrixXd zk = kp.encode(xs), zp = pca.encode(xs);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < Eigen::Index(d); ++k) {
        const double sign = zk.col(k).dot(zp.col(k)) >= 0 ? 1.0 : -1.0;
        worst = std::max(worst, (sign * zk.col(k) - zp.col(k)).cwiseAbs().maxCoeff());
    }
    report(12, rec > 0.95 && worst <= 1e-6,
           fmt("ica source recovery min |corr| %.4f (> 0.95); kpca(p=1,c=0) vs pca max diff %.3e (<= 1e-6)", rec,
               worst));
}

} // namespace

int main() {
    criterion(2, rate_mapping);
    criterion(3, pca_exactness);
    criterion(4, gradient_check);
    criterion(10, metric_formulas);
    criterion(12, ica_and_kpca);
    criterion(11, determinism);
    criterion(9, restart_protocol);
    AcceptanceRun run;
    bool have_run = false;
    try {
        run = acceptance_sweep();
        have_run = true;
    } catch (const std::exception& e) {
        for (int id : {5, 6, 7, 8}) report(id, false, std::string("acceptance sweep failed: ") + e.what());
    }
    if (have_run) {
        criterion(5, [&] { mse_trend(run); });
        criterion(6, [&] { classification_floor(run); });
        criterion(7, [&] { rgb_gap(run); });
        criterion(8, [&] { snr_claim(run); });
    }
    criterion(1, grid_cardinality);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
