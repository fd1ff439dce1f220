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

// hyperbench command line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperbench/autoencoder.hpp"
#include "hyperbench/binary_io.hpp"
#include "hyperbench/dataset_io.hpp"
#include "hyperbench/error.hpp"
#include "hyperbench/gbt.hpp"
#include "hyperbench/metrics.hpp"
#include "hyperbench/models.hpp"
#include "hyperbench/savgol.hpp"
#include "hyperbench/sweep.hpp"

using namespace hyperbench;

namespace {

std::vector<ClassSpec> parse_classes(const std::string& spec) {
    std::vector<ClassSpec> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.rfind(':');
        if (colon == std::string::npos)
            throw ConfigError("classes", "expected name:count, got '" + item + "'");
        out.push_back({item.substr(0, colon), std::stoul(item.substr(colon + 1))});
    }
    return out;
}

std::string matrix_csv(const Eigen::MatrixXd& m, const std::string& prefix) {
    std::string s = "pixel";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += ',' + prefix + std::to_string(j);
    s += '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        s += std::to_string(i);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, ",%.17g", m(i, j));
            s += buf;
        }
        s += '\n';
    }
    return s;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');  // pixel index
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(line_no, "row " + std::to_string(line_no) + " has a different width");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(line_no, "no data rows");
    Eigen::MatrixXd m(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    return m;
}

void print_report(const ClassificationReport& rep, const std::vector<std::string>& names) {
    std::printf("%-16s %10s %10s %10s\n", "label", "precision", "recall", "f1");
    for (std::size_t c = 0; c < rep.per_class.size(); ++c)
        std::printf("%-16s %10.6f %10.6f %10.6f\n", names[c].c_str(), rep.per_class[c].precision,
                    rep.per_class[c].recall, rep.per_class[c].f1);
    std::printf("%-16s %32.6f\n", "macro f1", rep.macro_f1());
}

struct AeFlags {
    int restarts = 10;
    int epochs = 30;
    std::size_t hidden = 256;
    std::size_t batch = 64;
};

void add_ae_flags(CLI::App* cmd, AeFlags& f) {
    cmd->add_option("--restarts", f.restarts, "Autoencoder restarts");
    cmd->add_option("--epochs", f.epochs, "Autoencoder epochs per restart");
    cmd->add_option("--hidden", f.hidden, "AE hidden width");
    cmd->add_option("--batch", f.batch, "Mini-batch size");
}

FitOptions fit_options(const AeFlags& f) {
    FitOptions o;
    o.ae.restarts = f.restarts;
    o.ae.epochs = f.epochs;
    o.ae.hidden_ae = f.hidden;
    o.ae.batch_size = f.batch;
    return o;
}

Eigen::MatrixXd features(const LabeledDataset& ds, Split s, const std::string& model_path) {
    Eigen::MatrixXd x = ds.matrix(s);
    if (model_path.empty()) return x;
    return load_model(model_path)->encode(x);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperspectral pixel compression and classification benchmark"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic labelled dataset");
    SyntheticConfig gcfg;
    std::string gen_classes, gen_preset, gen_out;
    std::size_t gen_total = 0;
    gen->add_option("--seed", gcfg.seed, "Generator seed");
    gen->add_option("--classes", gen_classes, "name:count,name:count,...");
    gen->add_option("--preset", gen_preset, "suburban, urban, forest or acceptance");
    gen->add_option("--total", gen_total, "Rescale a preset to this many pixels");
    gen->add_option("--bands", gcfg.n_bands, "Band count");
    gen->add_option("--noise", gcfg.noise_sigma, "Gaussian noise sigma");
    gen->add_option("--smoothness", gcfg.endmember_smoothness, "Endmember bump width scale, nm");
    gen->add_option("--mixing", gcfg.mixing_jitter, "Mixing jitter in [0,1)");
    gen->add_option("--shift", gcfg.shift_jitter_nm, "Per-pixel wavelength shift range, nm");
    gen->add_option("--out", gen_out, "Output .hspx or .csv")->required();

    // denoise
    auto* den = app.add_subcommand("denoise", "Savitzky-Golay filter every pixel");
    SgConfig sg;
    std::string den_in, den_out;
    den->add_option("--window", sg.window, "Odd window length");
    den->add_option("--order", sg.poly_order, "Polynomial order");
    den->add_option("input", den_in)->required();
    den->add_option("output", den_out)->required();

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a compressor on the training split");
    std::string fit_method, fit_data, fit_out;
    int fit_rate = 95;
    std::uint64_t fit_seed = 0;
    AeFlags fit_ae;
    fit->add_option("--method", fit_method, "pca, kpca, ica, ae or dae")->required();
    fit->add_option("--rate", fit_rate, "Compression rate in percent");
    fit->add_option("--seed", fit_seed, "Seed");
    add_ae_flags(fit, fit_ae);
    fit->add_option("data", fit_data)->required();
    fit->add_option("model", fit_out)->required();

    // encode / decode
    auto* enc = app.add_subcommand("encode", "Encode every pixel of a dataset");
    std::string enc_model, enc_data, enc_out;
    enc->add_option("--model", enc_model)->required();
    enc->add_option("data", enc_data)->required();
    enc->add_option("output", enc_out, "CSV of latent codes")->required();
    auto* dec = app.add_subcommand("decode", "Decode a CSV of latent codes");
    std::string dec_model, dec_in, dec_out;
    dec->add_option("--model", dec_model)->required();
    dec->add_option("input", dec_in)->required();
    dec->add_option("output", dec_out, "CSV of reconstructed spectra")->required();

    // classifier
    auto* tc = app.add_subcommand("train-clf", "Train the boosted-tree classifier on the training split");
    std::string tc_model, tc_data, tc_out;
    GbtConfig gbt;
    tc->add_option("--model", tc_model, "Compressor applied first");
    tc->add_option("--rounds", gbt.n_rounds);
    tc->add_option("--depth", gbt.max_depth);
    tc->add_option("--learning-rate", gbt.learning_rate);
    tc->add_option("--lambda", gbt.reg_lambda);
    tc->add_option("data", tc_data)->required();
    tc->add_option("output", tc_out)->required();

    auto* pr = app.add_subcommand("predict", "Score a classifier on the test split");
    std::string pr_model, pr_clf, pr_data;
    pr->add_option("--model", pr_model, "Compressor applied first");
    pr->add_option("--clf", pr_clf)->required();
    pr->add_option("data", pr_data)->required();

    auto* cl = app.add_subcommand("classify", "Predict a label for every pixel");
    std::string cl_model, cl_clf, cl_data, cl_out;
    cl->add_option("--model", cl_model, "Compressor applied first");
    cl->add_option("--clf", cl_clf)->required();
    cl->add_option("data", cl_data)->required();
    cl->add_option("output", cl_out)->required();

    // tune
    auto* tu = app.add_subcommand("tune", "Grid search of the AE hidden width");
    std::string tu_data;
    std::vector<int> tu_rates{99};
    std::vector<std::size_t> tu_grid{64, 128, 256, 512};
    AeFlags tu_ae;
    std::uint64_t tu_seed = 0;
    tu->add_option("--rates", tu_rates)->delimiter(',');
    tu->add_option("--grid", tu_grid)->delimiter(',');
    tu->add_option("--seed", tu_seed);
    add_ae_flags(tu, tu_ae);
    tu->add_option("data", tu_data)->required();

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run an experiment grid");
    std::string sw_plan, sw_out;
    std::size_t sw_workers = 0;
    int sw_reps = 0;
    sw->add_option("--plan", sw_plan)->required();
    sw->add_option("--out", sw_out)->required();
    sw->add_option("--workers", sw_workers, "Overrides the plan's parallelism");
    sw->add_option("--time-reps", sw_reps, "Overrides the plan's time_reps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            SyntheticConfig cfg = gcfg;
            if (!gen_preset.empty()) {
                cfg = preset_config(gen_preset, gen_total);
                if (gen->count("--seed")) cfg.seed = gcfg.seed;
            } else {
                cfg.classes = parse_classes(gen_classes);
            }
            auto ds = generate_synthetic(cfg);
            save_dataset(ds, gen_out);
            std::printf("wrote %zu pixels x %zu bands to %s\n", ds.size(), ds.n_bands, gen_out.c_str());
        } else if (*den) {
            save_dataset(sg_filter_dataset(load_dataset(den_in), sg), den_out);
        } else if (*fit) {
            auto ds = load_dataset(fit_data);
            const auto d = dims_for_rate(ds.n_bands, fit_rate);
            auto model = fit_compressor(parse_method(fit_method), ds.matrix(Split::Train),
                                        ds.matrix(Split::Validation), d, fit_seed, fit_options(fit_ae));
            for (const auto& w : model->warnings()) std::fprintf(stderr, "warning: %s\n", w.c_str());
            save_model(*model, fit_out);
            std::printf("%s d=%zu saved to %s\n", fit_method.c_str(), d, fit_out.c_str());
        } else if (*enc) {
            auto model = load_model(enc_model);
            write_file(enc_out, matrix_csv(model->encode(load_dataset(enc_data).matrix()), "z"));
        } else if (*dec) {
            auto model = load_model(dec_model);
            write_file(dec_out, matrix_csv(model->decode(read_matrix_csv(dec_in)), "b"));
        } else if (*tc) {
            auto ds = load_dataset(tc_data);
            auto clf = gbt_train(features(ds, Split::Train, tc_model), ds.labels_of(Split::Train),
                                 ds.n_classes(), gbt);
            save_gbt(clf, tc_out);
        } else if (*pr) {
            auto ds = load_dataset(pr_data);
            auto clf = load_gbt(pr_clf);
            auto pred = clf.predict_labels(features(ds, Split::Test, pr_model));
            print_report(classification_scores(pred, ds.labels_of(Split::Test), ds.n_classes()),
                         ds.class_names);
        } else if (*cl) {
            auto ds = load_dataset(cl_data);
            std::unique_ptr<Compressor> model;
            if (!cl_model.empty()) model = load_model(cl_model);
            auto pred = classify_dataset(ds, model.get(), load_gbt(cl_clf), cl_out);
            std::printf("classified %zu pixels\n", pred.size());
        } else if (*tu) {
            auto ds = load_dataset(tu_data);
            AeConfig base = fit_options(tu_ae).ae;
            base.seed = tu_seed;
            for (int rate : tu_rates) {
                base.latent_dim = dims_for_rate(ds.n_bands, rate);
                auto table = tune_hidden_width(ds.matrix(Split::Train), ds.matrix(Split::Validation), base,
                                               tu_grid);
                for (const auto& e : table)
                    std::printf("rate %d hidden %zu val_mse %.6e\n", rate, e.hidden, e.val_mse);
            }
        } else if (*sw) {
            auto plan = load_plan(sw_plan);
            if (sw_workers > 0) plan.parallelism = sw_workers;
            if (sw_reps > 0) plan.time_reps = sw_reps;
            auto results = run_sweep(plan);
            emit_reports(results, sw_out);
            std::size_t failed = 0;
            for (const auto& r : results) failed += r.failed() ? 1 : 0;
            std::printf("%zu jobs, %zu failed, reports in %s\n", results.size(), failed, sw_out.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
