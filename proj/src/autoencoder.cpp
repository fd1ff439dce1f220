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

#include "hyperbench/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hyperbench/error.hpp"

namespace hyperbench {

void AeConfig::validate() const {
    if (latent_dim < 1) throw ConfigError("latent_dim", "must be >= 1");
    if (hidden_ae < 1) throw ConfigError("hidden_ae", "must be >= 1");
    if (epochs < 1) throw ConfigError("epochs", "must be >= 1");
    if (batch_size < 1) throw ConfigError("batch_size", "must be >= 1");
    if (restarts < 1) throw ConfigError("restarts", "must be >= 1");
    if (!(dae_noise_sigma >= 0.0) || !std::isfinite(dae_noise_sigma))
        throw ConfigError("dae_noise_sigma", "must be nonnegative");
    if (!(adam.lr > 0.0)) throw ConfigError("adam.lr", "must be positive");
}

std::vector<std::size_t> encoder_hidden_sizes(const AeConfig& cfg) {
    if (cfg.variant == AeVariant::Dae) return {400, 500};
    return {cfg.hidden_ae};
}

namespace {

Mlp build_network(std::size_t n, std::size_t d, const std::vector<std::size_t>& hidden) {
    std::vector<std::size_t> sizes{n};
    std::vector<Activation> acts;
    for (auto h : hidden) {
        sizes.push_back(h);
        acts.push_back(Activation::Relu);
    }
    sizes.push_back(d);
    acts.push_back(Activation::Identity);
    for (auto it = hidden.rbegin(); it != hidden.rend(); ++it) {
        sizes.push_back(*it);
        acts.push_back(Activation::Relu);
    }
    sizes.push_back(n);
    acts.push_back(Activation::Sigmoid);
    return Mlp(sizes, acts);
}

double mean_reconstruction_error(const Mlp& net, const Eigen::MatrixXd& x) {
    constexpr Eigen::Index kChunk = 1024;
    double acc = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); c += kChunk) {
        auto w = std::min(kChunk, x.cols() - c);
        auto block = x.middleCols(c, w);
        acc += (net.forward(block) - block).squaredNorm();
    }
    return acc / double(x.size());
}

} // namespace

AeModel train_autoencoder(const Eigen::MatrixXd& train, const Eigen::MatrixXd& val,
                          const AeConfig& cfg, const std::vector<std::size_t>& hidden,
                          double noise_sigma) {
    cfg.validate();
    if (train.rows() < 1) throw NumericError("ae_train: empty training set");
    const auto n = std::size_t(train.cols());
    if (cfg.latent_dim > n)
        throw ConfigError("latent_dim", "exceeds input size " + std::to_string(n));
    if (val.rows() > 0 && std::size_t(val.cols()) != n)
        throw NumericError("ae_train: validation set has a different band count");
    if (!train.allFinite() || !val.allFinite()) throw NumericError("ae_train: non-finite input");

    const Eigen::MatrixXd xt = train.transpose();
    const Eigen::MatrixXd xv = val.rows() > 0 ? Eigen::MatrixXd(val.transpose()) : xt;
    const auto n_train = std::size_t(xt.cols());
    const std::size_t bottleneck = hidden.size() + 1;

    AeModel model;
    model.variant_ = cfg.variant;
    Mlp best;
    double best_val = std::numeric_limits<double>::infinity();
    bool have_best = false;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::mt19937_64 rng(cfg.seed + std::uint64_t(restart));
        std::normal_distribution<double> gauss(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
        Mlp net = build_network(n, cfg.latent_dim, hidden);
        net.init_he_uniform(rng);
        AdamState adam(net, cfg.adam);

        TrainingHistory hist;
        std::vector<std::size_t> order(n_train);
        std::iota(order.begin(), order.end(), 0);
        Eigen::MatrixXd batch, input;

        for (int epoch = 0; epoch < cfg.epochs && !hist.diverged; ++epoch) {
            std::shuffle(order.begin(), order.end(), rng);
            double loss_sum = 0.0;
            for (std::size_t start = 0; start < n_train; start += cfg.batch_size) {
                const auto b = std::min(cfg.batch_size, n_train - start);
                batch.resize(Eigen::Index(n), Eigen::Index(b));
                for (std::size_t k = 0; k < b; ++k)
                    batch.col(Eigen::Index(k)) = xt.col(Eigen::Index(order[start + k]));
                input = batch;
                if (noise_sigma > 0.0) {
                    for (Eigen::Index j = 0; j < input.cols(); ++j)
                        for (Eigen::Index i = 0; i < input.rows(); ++i)
                            input(i, j) = std::clamp(input(i, j) + gauss(rng), 0.0, 1.0);
                }
                auto lg = mse_loss_gradients(net, input, batch);
                if (!std::isfinite(lg.loss)) {
                    hist.diverged = true;
                    break;
                }
                loss_sum += lg.loss * double(b);
                adam.step(net, lg.gradients);
            }
            if (hist.diverged) break;
            hist.train_mse.push_back(loss_sum / double(n_train));
            double v = mean_reconstruction_error(net, xv);
            if (!std::isfinite(v)) {
                hist.diverged = true;
                break;
            }
            hist.val_mse.push_back(v);
        }

        if (hist.diverged) {
            model.warnings_.push_back("restart " + std::to_string(restart) +
                                      " diverged and was discarded");
        } else if (hist.final_val_mse() < best_val) {
            best_val = hist.final_val_mse();
            best = std::move(net);
            model.chosen_ = std::size_t(restart);
            have_best = true;
        }
        model.histories_.push_back(std::move(hist));
    }
    if (!have_best) throw NumericError("ae_train: every restart diverged");

    model.encoder_ = best.slice(0, bottleneck);
    model.decoder_ = best.slice(bottleneck, best.layers().size());
    return model;
}

AeModel ae_train(const Eigen::MatrixXd& train, const Eigen::MatrixXd& val, const AeConfig& cfg) {
    const double sigma = cfg.variant == AeVariant::Dae ? cfg.dae_noise_sigma : 0.0;
    return train_autoencoder(train, val, cfg, encoder_hidden_sizes(cfg), sigma);
}

Eigen::MatrixXd AeModel::encode_impl(const Eigen::MatrixXd& x) const {
    return encoder_.forward(x.transpose()).transpose();
}

Eigen::MatrixXd AeModel::decode_impl(const Eigen::MatrixXd& z) const {
    return decoder_.forward(z.transpose()).transpose();
}

ModelSections AeModel::sections() const {
    ModelSections s;
    BinaryWriter net;
    net.u8(static_cast<std::uint8_t>(variant_));
    encoder_.write(net);
    decoder_.write(net);
    s.add("autoencoder", std::move(net));

    BinaryWriter h;
    h.u32(static_cast<std::uint32_t>(chosen_));
    h.u32(static_cast<std::uint32_t>(histories_.size()));
    for (const auto& hist : histories_) {
        h.u8(hist.diverged ? 1 : 0);
        h.u32(static_cast<std::uint32_t>(hist.train_mse.size()));
        for (double v : hist.train_mse) h.f64(v);
        h.u32(static_cast<std::uint32_t>(hist.val_mse.size()));
        for (double v : hist.val_mse) h.f64(v);
    }
    s.add("history", std::move(h));
    return s;
}

AeModel AeModel::from_sections(const ModelSections& s) {
    AeModel m;
    auto r = s.get("autoencoder");
    auto at = r.offset();
    auto tag = r.u8();
    if (tag > 1) throw ParseError(at, "unknown autoencoder variant");
    m.variant_ = static_cast<AeVariant>(tag);
    at = r.offset();
    m.encoder_ = Mlp::read(r);
    m.decoder_ = Mlp::read(r);
    if (m.encoder_.layers().empty() || m.decoder_.layers().empty() ||
        m.encoder_.output_dim() != m.decoder_.input_dim() ||
        m.encoder_.input_dim() != m.decoder_.output_dim())
        throw ParseError(at, "encoder and decoder shapes do not match");
    if (s.has("history")) {
        auto h = s.get("history");
        m.chosen_ = h.u32();
        auto count = h.u32();
        for (std::uint32_t i = 0; i < count; ++i) {
            TrainingHistory hist;
            hist.diverged = h.u8() != 0;
            auto nt = h.u32();
            for (std::uint32_t k = 0; k < nt; ++k) hist.train_mse.push_back(h.f64());
            auto nv = h.u32();
            for (std::uint32_t k = 0; k < nv; ++k) hist.val_mse.push_back(h.f64());
            m.histories_.push_back(std::move(hist));
        }
    }
    return m;
}

std::vector<TuneEntry> tune_hidden_width(const Eigen::MatrixXd& train, const Eigen::MatrixXd& val,
                                         const AeConfig& base, const std::vector<std::size_t>& grid) {
    std::vector<TuneEntry> out;
    for (auto width : grid) {
        AeConfig cfg = base;
        cfg.variant = AeVariant::Ae;
        cfg.hidden_ae = width;
        auto model = ae_train(train, val, cfg);
        out.push_back({width, model.histories()[model.chosen_restart()].final_val_mse()});
    }
    return out;
}

} // namespace hyperbench
