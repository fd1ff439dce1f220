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

#include "hyperbench/mlp.hpp"

#include <cmath>
#include <limits>

#include "hyperbench/error.hpp"

namespace hyperbench {

namespace {

void apply_activation(Eigen::MatrixXd& z, Activation a) {
    switch (a) {
    case Activation::Identity: break;
    case Activation::Relu: z = z.cwiseMax(0.0); break;
    case Activation::Sigmoid:
        // keep the output inside the open unit interval when the logistic saturates
        z = (1.0 + (-z.array()).exp())
                .inverse()
                .max(std::numeric_limits<double>::denorm_min())
                .min(std::nextafter(1.0, 0.0));
        break;
    }
}

// d(activation)/dz expressed through the activation output.
void multiply_derivative(Eigen::MatrixXd& delta, const Eigen::MatrixXd& out, Activation a) {
    switch (a) {
    case Activation::Identity: break;
    case Activation::Relu: delta.array() *= (out.array() > 0.0).cast<double>(); break;
    case Activation::Sigmoid: delta.array() *= out.array() * (1.0 - out.array()); break;
    }
}

} // namespace

Mlp::Mlp(std::span<const std::size_t> sizes, std::span<const Activation> activations) {
    if (sizes.size() < 2 || activations.size() + 1 != sizes.size())
        throw ConfigError("sizes", "need one activation per layer transition");
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        if (sizes[l] == 0 || sizes[l + 1] == 0) throw ConfigError("sizes", "zero-width layer");
        DenseLayer layer;
        layer.weight = Eigen::MatrixXd::Zero(Eigen::Index(sizes[l + 1]), Eigen::Index(sizes[l]));
        layer.bias = Eigen::VectorXd::Zero(Eigen::Index(sizes[l + 1]));
        layer.activation = activations[l];
        layers_.push_back(std::move(layer));
    }
}

void Mlp::init_he_uniform(std::mt19937_64& rng) {
    for (auto& layer : layers_) {
        const double limit = std::sqrt(6.0 / double(layer.weight.cols()));
        std::uniform_real_distribution<double> u(-limit, limit);
        for (Eigen::Index j = 0; j < layer.weight.cols(); ++j)
            for (Eigen::Index i = 0; i < layer.weight.rows(); ++i) layer.weight(i, j) = u(rng);
        layer.bias.setZero();
    }
}

std::size_t Mlp::input_dim() const {
    return layers_.empty() ? 0 : std::size_t(layers_.front().weight.cols());
}

std::size_t Mlp::output_dim() const {
    return layers_.empty() ? 0 : std::size_t(layers_.back().weight.rows());
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += std::size_t(l.weight.size() + l.bias.size());
    return n;
}

std::vector<Eigen::MatrixXd> Mlp::forward_all(const Eigen::MatrixXd& x) const {
    if (layers_.empty()) throw NumericError("mlp: network has no layers");
    if (std::size_t(x.rows()) != input_dim())
        throw NumericError("mlp: input has " + std::to_string(x.rows()) + " rows, expected " +
                           std::to_string(input_dim()));
    if (!x.allFinite()) throw NumericError("mlp: non-finite input");
    std::vector<Eigen::MatrixXd> acts;
    acts.reserve(layers_.size() + 1);
    acts.push_back(x);
    for (const auto& layer : layers_) {
        Eigen::MatrixXd z = layer.weight * acts.back();
        z.colwise() += layer.bias;
        apply_activation(z, layer.activation);
        acts.push_back(std::move(z));
    }
    return acts;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
    return std::move(forward_all(x).back());
}

MlpGradients Mlp::backward(const std::vector<Eigen::MatrixXd>& acts,
                           const Eigen::MatrixXd& d_output) const {
    if (acts.size() != layers_.size() + 1) throw NumericError("mlp: activation count mismatch");
    MlpGradients g;
    g.weight.resize(layers_.size());
    g.bias.resize(layers_.size());
    Eigen::MatrixXd delta = d_output;
    for (std::size_t l = layers_.size(); l-- > 0;) {
        multiply_derivative(delta, acts[l + 1], layers_[l].activation);
        g.weight[l].noalias() = delta * acts[l].transpose();
        g.bias[l] = delta.rowwise().sum();
        Eigen::MatrixXd prev = layers_[l].weight.transpose() * delta;
        delta = std::move(prev);
    }
    g.input = std::move(delta);
    return g;
}

Mlp Mlp::slice(std::size_t first, std::size_t last) const {
    if (first >= last || last > layers_.size()) throw ConfigError("slice", "bad layer range");
    Mlp out;
    out.layers_.assign(layers_.begin() + std::ptrdiff_t(first), layers_.begin() + std::ptrdiff_t(last));
    return out;
}

void Mlp::write(BinaryWriter& w) const {
    w.u32(static_cast<std::uint32_t>(layers_.size()));
    for (const auto& l : layers_) {
        w.u8(static_cast<std::uint8_t>(l.activation));
        w.matrix(l.weight);
        w.vector(l.bias);
    }
}

Mlp Mlp::read(BinaryReader& r) {
    Mlp m;
    auto n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
        DenseLayer l;
        auto at = r.offset();
        auto tag = r.u8();
        if (tag > 2) throw ParseError(at, "unknown activation tag");
        l.activation = static_cast<Activation>(tag);
        l.weight = r.matrix();
        at = r.offset();
        l.bias = r.vector();
        if (l.bias.size() != l.weight.rows()) throw ParseError(at, "bias size mismatch");
        if (!m.layers_.empty() && m.layers_.back().weight.rows() != l.weight.cols())
            throw ParseError(at, "layer sizes do not chain");
        m.layers_.push_back(std::move(l));
    }
    return m;
}

bool Mlp::operator==(const Mlp& o) const {
    if (layers_.size() != o.layers_.size()) return false;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& a = layers_[l];
        const auto& b = o.layers_[l];
        if (a.activation != b.activation || a.weight.rows() != b.weight.rows() ||
            a.weight.cols() != b.weight.cols() || a.weight != b.weight || a.bias != b.bias)
            return false;
    }
    return true;
}

LossAndGradients mse_loss_gradients(const Mlp& m, const Eigen::MatrixXd& x,
                                    const Eigen::MatrixXd& target) {
    auto acts = m.forward_all(x);
    const auto& out = acts.back();
    if (out.rows() != target.rows() || out.cols() != target.cols())
        throw NumericError("mse_loss_gradients: target shape mismatch");
    Eigen::MatrixXd diff = out - target;
    const double count = double(diff.size());
    LossAndGradients r;
    r.loss = diff.squaredNorm() / count;
    r.gradients = m.backward(acts, (2.0 / count) * diff);
    return r;
}

} // namespace hyperbench
