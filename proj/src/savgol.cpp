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

#include "hyperbench/savgol.hpp"

#include <algorithm>
#include <cmath>

#include "hyperbench/error.hpp"
#include "hyperbench/linalg.hpp"

namespace hyperbench {

void SgConfig::validate() const {
    if (window < 3 || window % 2 == 0) throw ConfigError("window", "must be odd and >= 3");
    if (poly_order < 0 || poly_order >= window)
        throw ConfigError("poly_order", "must lie in [0, window)");
}

std::vector<double> sg_weights(const SgConfig& cfg) {
    cfg.validate();
    const int half = cfg.window / 2;
    // Vandermonde design over offsets -half..half; row 0 of the
    // least-squares solution for B = I evaluates the fit at offset 0.
    Eigen::MatrixXd design(cfg.window, cfg.poly_order + 1);
    for (int i = 0; i < cfg.window; ++i) {
        double t = i - half;
        double p = 1.0;
        for (int j = 0; j <= cfg.poly_order; ++j, p *= t) design(i, j) = p;
    }
    Eigen::MatrixXd coef =
        solve_least_squares(design, Eigen::MatrixXd::Identity(cfg.window, cfg.window));
    std::vector<double> w(cfg.window);
    for (int i = 0; i < cfg.window; ++i) w[i] = coef(0, i);
    return w;
}

Spectrum sg_filter_unclamped(std::span<const double> s, const SgConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    if (n < cfg.window)
        throw NumericError("sg_filter: spectrum length " + std::to_string(n) +
                           " shorter than window " + std::to_string(cfg.window));
    const auto w = sg_weights(cfg);
    const std::ptrdiff_t half = cfg.window / 2;
    auto at = [&](std::ptrdiff_t i) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * (n - 1) - i;
        return s[static_cast<std::size_t>(i)];
    };
    Spectrum out(s.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t k = -half; k <= half; ++k) acc += w[k + half] * at(i + k);
        out[i] = acc;
    }
    return out;
}

Spectrum sg_filter(std::span<const double> s, const SgConfig& cfg) {
    auto out = sg_filter_unclamped(s, cfg);
    for (auto& v : out) v = std::clamp(v, 0.0, 1.0);
    return out;
}

double snr_db(std::span<const double> s, const SgConfig& cfg) {
    auto smooth = sg_filter(s, cfg);
    double signal = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        signal += smooth[i] * smooth[i];
        double r = s[i] - smooth[i];
        residual += r * r;
    }
    signal /= double(s.size());
    residual /= double(s.size());
    if (residual < 1e-20) return kSnrCapDb;
    if (signal <= 0.0) return -kSnrCapDb;
    return std::clamp(10.0 * std::log10(signal / residual), -kSnrCapDb, kSnrCapDb);
}

LabeledDataset sg_filter_dataset(const LabeledDataset& ds, const SgConfig& cfg) {
    return map_spectra(ds, [&](const Spectrum& s) { return sg_filter(s, cfg); });
}

} // namespace hyperbench
