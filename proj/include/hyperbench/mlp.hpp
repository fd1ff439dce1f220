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

#ifndef HYPERBENCH_MLP_HPP
#define HYPERBENCH_MLP_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hyperbench/binary_io.hpp"

namespace hyperbench {

enum class Activation : std::uint8_t { Identity = 0, Relu = 1, Sigmoid = 2 };

struct DenseLayer {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;    // out
    Activation activation = Activation::Identity;
};

struct MlpGradients {
    std::vector<Eigen::MatrixXd> weight;
    std::vector<Eigen::VectorXd> bias;
    Eigen::MatrixXd input;  // dL/dx, same shape as the batch
};

/// Fully connected feed-forward network. Batches are column-major: one
/// sample per column.
class Mlp {
public:
    Mlp() = default;
    /// Zero-initialised network; sizes has one more entry than activations.
    Mlp(std::span<const std::size_t> sizes, std::span<const Activation> activations);

    /// He-uniform weights (limit sqrt(6 / fan_in)), zero biases.
    void init_he_uniform(std::mt19937_64& rng);

    std::size_t input_dim() const;
    std::size_t output_dim() const;
    std::size_t parameter_count() const;

    std::vector<DenseLayer>& layers() noexcept { return layers_; }
    const std::vector<DenseLayer>& layers() const noexcept { return layers_; }

    /// Activations of every layer; element 0 is the input itself.
    /// Throws NumericError on a shape mismatch or non-finite input.
    std::vector<Eigen::MatrixXd> forward_all(const Eigen::MatrixXd& x) const;
    Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;

    /// Backpropagates dL/d(output) through activations from forward_all.
    MlpGradients backward(const std::vector<Eigen::MatrixXd>& activations,
                          const Eigen::MatrixXd& d_output) const;

    /// Layers [first, last) as a network of their own.
    Mlp slice(std::size_t first, std::size_t last) const;

    void write(BinaryWriter& w) const;
    static Mlp read(BinaryReader& r);

    bool operator==(const Mlp& o) const;

private:
    std::vector<DenseLayer> layers_;
};

struct LossAndGradients {
    double loss = 0.0;
    MlpGradients gradients;
};

/// Mean over every entry of (f(x) - target)^2 and its exact gradients.
LossAndGradients mse_loss_gradients(const Mlp& m, const Eigen::MatrixXd& x,
                                    const Eigen::MatrixXd& target);

} // namespace hyperbench

#endif
