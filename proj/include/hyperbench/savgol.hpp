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

#ifndef HYPERBENCH_SAVGOL_HPP
#define HYPERBENCH_SAVGOL_HPP

#include <span>
#include <vector>

#include "hyperbench/dataset.hpp"

namespace hyperbench {

struct SgConfig {
    int window = 11;     // odd, >= 3
    int poly_order = 3;  // < window

    void validate() const;
};

/// Convolution weights giving the centre value of the local least-squares
/// polynomial fit; size = window.
std::vector<double> sg_weights(const SgConfig& cfg);

/// Savitzky-Golay smoothing with mirror padding at both ends (the edge
/// sample is the mirror axis). The result is clamped to [0,1].
Spectrum sg_filter(std::span<const double> s, const SgConfig& cfg);

/// Same filter without the final clamp; linear in `s`.
Spectrum sg_filter_unclamped(std::span<const double> s, const SgConfig& cfg);

/// Cap returned by snr_db when the residual power vanishes.
inline constexpr double kSnrCapDb = 120.0;

/// 10 log10(P(sg(s)) / P(s - sg(s))) with P the mean square; capped at
/// kSnrCapDb (also returned when the residual power is below 1e-20).
double snr_db(std::span<const double> s, const SgConfig& cfg);

/// Applies sg_filter to every pixel of a dataset.
LabeledDataset sg_filter_dataset(const LabeledDataset& ds, const SgConfig& cfg);

} // namespace hyperbench

#endif
