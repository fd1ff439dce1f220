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

#ifndef HYPERBENCH_DATASET_HPP
#define HYPERBENCH_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hyperbench {

/// Default sensor grid: 301 bands from 400 nm to 1000 nm in 2 nm steps.
inline constexpr std::size_t kDefaultBands = 301;
inline constexpr double kFirstWavelengthNm = 400.0;
inline constexpr double kBandStepNm = 2.0;

/// Wavelengths of the implicit grid, 400 + 2k nm.
std::vector<double> default_wavelengths(std::size_t n_bands);

/// One pixel's reflectance vector.
using Spectrum = std::vector<double>;

/// Throws NumericError unless every value is finite and within [0,1].
void check_spectrum(std::span<const double> s);

enum class Split : std::uint8_t { Train = 0, Validation = 1, Test = 2 };

std::string_view split_name(Split s);
Split parse_split(std::string_view name);

/// Pixels, labels and the train/validation/test assignment.
///
/// Reflectance is held as f32, which is also the on-disk precision, so
/// save/load round trips are exact.
struct LabeledDataset {
    std::size_t n_bands = 0;
    std::vector<double> wavelengths;        // n_bands entries, nm
    std::vector<std::string> class_names;
    std::vector<float> values;              // pixel-major, size() * n_bands
    std::vector<std::uint16_t> labels;
    std::vector<Split> split;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t n_classes() const noexcept { return class_names.size(); }

    std::span<const float> pixel(std::size_t i) const {
        return {values.data() + i * n_bands, n_bands};
    }
    Spectrum spectrum(std::size_t i) const;

    std::vector<std::size_t> indices(Split s) const;

    /// Rows = pixels (in index order) of the given split, cols = bands.
    Eigen::MatrixXd matrix(Split s) const;
    Eigen::MatrixXd matrix() const;
    std::vector<int> labels_of(Split s) const;

    /// Throws on any violated invariant (sizes, ranges, class coverage of splits).
    void validate() const;

    bool operator==(const LabeledDataset&) const = default;
};

struct ClassSpec {
    std::string name;
    std::size_t pixel_count = 0;
};

/// Parameters of the endmember-mixture generator.
struct SyntheticConfig {
    std::uint64_t seed = 0;
    std::size_t n_bands = kDefaultBands;
    std::vector<ClassSpec> classes;
    double noise_sigma = 0.01;
    /// Scale of the Gaussian bump widths, in nm.
    double endmember_smoothness = 30.0;
    /// Fraction of the maximal 0.4 non-dominant abundance a pixel may take.
    double mixing_jitter = 0.5;
    /// Per-pixel wavelength shift of all bumps, uniform in +-shift_jitter_nm.
    double shift_jitter_nm = 0.0;

    void validate() const;
};

/// Deterministic synthetic dataset: one smooth endmember per class, pixels
/// mixing their class endmember (abundance >= 0.6) with up to two others.
LabeledDataset generate_synthetic(const SyntheticConfig& cfg);

/// Per-class 50/25/25 split with largest-remainder rounding. Remainder ties
/// go to validation first, then train, then test.
std::vector<Split> stratified_split(std::span<const std::uint16_t> labels, std::uint64_t seed,
                                    std::span<const std::string> class_names = {});

struct SplitCounts {
    std::size_t train = 0, validation = 0, test = 0;
};
/// Per-split counts for a class of `n` pixels.
SplitCounts split_counts(std::size_t n);

/// Projection on the bands nearest 670, 540 and 470 nm, in R,G,B order.
LabeledDataset extract_rgb(const LabeledDataset& ds);
/// Indices selected by extract_rgb.
std::vector<std::size_t> rgb_band_indices(std::span<const double> wavelengths);

/// Same dataset with every spectrum replaced by `f(spectrum)`.
template <typename F>
LabeledDataset map_spectra(const LabeledDataset& ds, F&& f) {
    LabeledDataset out = ds;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        Spectrum s = f(ds.spectrum(i));
        for (std::size_t b = 0; b < ds.n_bands; ++b)
            out.values[i * ds.n_bands + b] = static_cast<float>(s[b]);
    }
    return out;
}

} // namespace hyperbench

#endif
