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

#include "hyperbench/adam.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "hyperbench/error.hpp"

namespace hyperbench {

void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, std::int64_t step, const AdamConfig& cfg) {
    if (grads.size() != params.size() || m.size() != params.size() || v.size() != params.size())
        throw NumericError("adam_update: buffer size mismatch");
    if (step < 1) throw NumericError("adam_update: step index starts at 1");
    const double c1 = 1.0 - std::pow(cfg.beta1, double(step));
    const double c2 = 1.0 - std::pow(cfg.beta2, double(step));
    using Arr = Eigen::Map<Eigen::ArrayXd>;
    const auto n = Eigen::Index(params.size());
    Arr p(params.data(), n), mm(m.data(), n), vv(v.data(), n);
    Eigen::Map<const Eigen::ArrayXd> g(grads.data(), n);
    mm = cfg.beta1 * mm + (1.0 - cfg.beta1) * g;
    vv = cfg.beta2 * vv + (1.0 - cfg.beta2) * g.square();
    p -= cfg.lr * (mm / c1) / ((vv / c2).sqrt() + cfg.eps);
}

AdamState::AdamState(const Mlp& net, AdamConfig cfg) : cfg_(cfg) {
    for (const auto& l : net.layers()) {
        m_w_.emplace_back(std::size_t(l.weight.size()), 0.0);
        v_w_.emplace_back(std::size_t(l.weight.size()), 0.0);
        m_b_.emplace_back(std::size_t(l.bias.size()), 0.0);
        v_b_.emplace_back(std::size_t(l.bias.size()), 0.0);
    }
}

void AdamState::step(Mlp& net, const MlpGradients& grads) {
    auto& layers = net.layers();
    if (layers.size() != m_w_.size() || grads.weight.size() != layers.size())
        throw NumericError("AdamState: network shape changed");
    ++t_;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        auto& w = layers[l].weight;
        auto& b = layers[l].bias;
        if (grads.weight[l].size() != w.size() || grads.bias[l].size() != b.size())
            throw NumericError("AdamState: gradient shape mismatch");
        adam_update({w.data(), std::size_t(w.size())},
                    {grads.weight[l].data(), std::size_t(grads.weight[l].size())}, m_w_[l], v_w_[l],
                    t_, cfg_);
        adam_update({b.data(), std::size_t(b.size())},
                    {grads.bias[l].data(), std::size_t(grads.bias[l].size())}, m_b_[l], v_b_[l], t_,
                    cfg_);
    }
}

} // namespace hyperbench
