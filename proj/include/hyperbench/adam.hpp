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

#ifndef HYPERBENCH_ADAM_HPP
#define HYPERBENCH_ADAM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hyperbench/mlp.hpp"

namespace hyperbench {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// One bias-corrected Adam update of `params` in place. `step` is the
/// 1-based index of this update; `m` and `v` are the moment buffers.
void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, std::int64_t step, const AdamConfig& cfg);

/// Moment buffers for every parameter of an Mlp.
class AdamState {
public:
    AdamState() = default;
    AdamState(const Mlp& net, AdamConfig cfg);

    void step(Mlp& net, const MlpGradients& grads);
    std::int64_t steps_taken() const noexcept { return t_; }

private:
    AdamConfig cfg_;
    std::int64_t t_ = 0;
    std::vector<std::vector<double>> m_w_, v_w_, m_b_, v_b_;
};

} // namespace hyperbench

#endif
