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

#ifndef HYPERBENCH_AUTOENCODER_HPP
#define HYPERBENCH_AUTOENCODER_HPP

#include <cstdint>
#include <vector>

#include "hyperbench/adam.hpp"
#include "hyperbench/compressor.hpp"
#include "hyperbench/mlp.hpp"

namespace hyperbench {

enum class AeVariant : std::uint8_t { Ae = 0, Dae = 1 };

struct AeConfig {
    AeVariant variant = AeVariant::Ae;
    std::size_t latent_dim = 1;
    /// Width of the single AE hidden layer. The DAE always uses 400/500.
    std::size_t hidden_ae = 256;
    int epochs = 30;
    std::size_t batch_size = 64;
    int restarts = 10;
    AdamConfig adam;
    double dae_noise_sigma = 0.05;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Hidden widths of the encoder (the decoder mirrors them).
std::vector<std::size_t> encoder_hidden_sizes(const AeConfig& cfg);

struct TrainingHistory {
    std::vector<double> train_mse;  // per epoch, mean over batches
    std::vector<double> val_mse;    // per epoch, clean validation input
    bool diverged = false;

    double final_val_mse() const { return val_mse.empty() ? 0.0 : val_mse.back(); }
};

/*
 Autoencoder compressor. The encoder maps n -> hidden... -> d with ReLU
 hidden layers and a linear bottleneck; the decoder mirrors it and ends in
 a sigmoid, so reconstructions stay inside (0,1).
*/
class AeModel final : public Compressor {
public:
    static AeModel from_sections(const ModelSections& s);

    Method method() const override { return variant_ == AeVariant::Ae ? Method::Ae : Method::Dae; }
    std::size_t input_dim() const override { return encoder_.input_dim(); }
    std::size_t latent_dim() const override { return encoder_.output_dim(); }

    const Mlp& encoder() const noexcept { return encoder_; }
    const Mlp& decoder() const noexcept { return decoder_; }
    /// One entry per restart, diverged restarts included.
    const std::vector<TrainingHistory>& histories() const noexcept { return histories_; }
    std::size_t chosen_restart() const noexcept { return chosen_; }

    ModelSections sections() const override;

protected:
    Eigen::MatrixXd encode_impl(const Eigen::MatrixXd& x) const override;
    Eigen::MatrixXd decode_impl(const Eigen::MatrixXd& z) const override;

private:
    friend AeModel train_autoencoder(const Eigen::MatrixXd&, const Eigen::MatrixXd&,
                                     const AeConfig&, const std::vector<std::size_t>&, double);

    AeVariant variant_ = AeVariant::Ae;
    Mlp encoder_;
    Mlp decoder_;
    std::vector<TrainingHistory> histories_;
    std::size_t chosen_ = 0;
};

/// Full training protocol: cfg.restarts independent runs seeded seed + i,
/// each He-uniform initialised and trained for cfg.epochs of shuffled
/// mini-batch Adam on the reconstruction MSE. The DAE variant corrupts each
/// batch input with fresh N(0, sigma^2) noise (clamped to [0,1]) while the
/// target stays clean. Returns the restart with the lowest final
/// validation MSE. Diverged restarts are kept in the history but never
/// chosen; if all diverge, NumericError. Rows of `train`/`val` are spectra.
AeModel ae_train(const Eigen::MatrixXd& train, const Eigen::MatrixXd& val, const AeConfig& cfg);

/// Same protocol with explicit encoder hidden widths and corruption level.
AeModel train_autoencoder(const Eigen::MatrixXd& train, const Eigen::MatrixXd& val,
                          const AeConfig& cfg, const std::vector<std::size_t>& hidden,
                          double noise_sigma);

struct TuneEntry {
    std::size_t hidden = 0;
    double val_mse = 0.0;
};

/// Grid search of the AE hidden width: trains one AE per width and reports
/// the chosen restart's validation MSE. Sorted like `grid`.
std::vector<TuneEntry> tune_hidden_width(const Eigen::MatrixXd& train, const Eigen::MatrixXd& val,
                                         const AeConfig& base, const std::vector<std::size_t>& grid);

} // namespace hyperbench

#endif
