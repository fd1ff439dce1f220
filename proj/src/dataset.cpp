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

#include "hyperbench/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "hyperbench/error.hpp"

namespace hyperbench {

std::vector<double> default_wavelengths(std::size_t n_bands) {
    std::vector<double> w(n_bands);
    for (std::size_t k = 0; k < n_bands; ++k) w[k] = kFirstWavelengthNm + kBandStepNm * double(k);
    return w;
}

void check_spectrum(std::span<const double> s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i]))
            throw NumericError("spectrum value " + std::to_string(i) + " is not finite");
        if (s[i] < 0.0 || s[i] > 1.0)
            throw NumericError("spectrum value " + std::to_string(i) + " outside [0,1]");
    }
}

std::string_view split_name(Split s) {
    switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "val";
    case Split::Test: return "test";
    }
    return "?";
}

Split parse_split(std::string_view name) {
    if (name == "train") return Split::Train;
    if (name == "val" || name == "validation") return Split::Validation;
    if (name == "test") return Split::Test;
    throw ConfigError("split", "unknown split '" + std::string(name) + "'");
}

Spectrum LabeledDataset::spectrum(std::size_t i) const {
    auto p = pixel(i);
    return Spectrum(p.begin(), p.end());
}

std::vector<std::size_t> LabeledDataset::indices(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (split[i] == s) out.push_back(i);
    return out;
}

Eigen::MatrixXd LabeledDataset::matrix(Split s) const {
    auto idx = indices(s);
    Eigen::MatrixXd m(idx.size(), n_bands);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        auto p = pixel(idx[r]);
        for (std::size_t b = 0; b < n_bands; ++b) m(r, b) = p[b];
    }
    return m;
}

Eigen::MatrixXd LabeledDataset::matrix() const {
    Eigen::MatrixXd m(size(), n_bands);
    for (std::size_t r = 0; r < size(); ++r) {
        auto p = pixel(r);
        for (std::size_t b = 0; b < n_bands; ++b) m(r, b) = p[b];
    }
    return m;
}

std::vector<int> LabeledDataset::labels_of(Split s) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (split[i] == s) out.push_back(labels[i]);
    return out;
}

void LabeledDataset::validate() const {
    if (n_bands < 1) throw ConfigError("n_bands", "must be at least 1");
    if (wavelengths.size() != n_bands)
        throw ConfigError("wavelengths", "expected one wavelength per band");
    if (class_names.empty()) throw ConfigError("class_names", "at least one class required");
    if (split.size() != labels.size())
        throw ConfigError("split", "length differs from labels");
    if (values.size() != labels.size() * n_bands)
        throw ConfigError("values", "length is not n_pixels * n_bands");
    for (std::size_t i = 0; i < values.size(); ++i) {
        float v = values[i];
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
            throw ConfigError("values", "pixel " + std::to_string(i / n_bands) +
                                            " has a value outside [0,1]");
    }
    std::vector<std::array<std::size_t, 3>> seen(n_classes(), {0, 0, 0});
    for (std::size_t i = 0; i < size(); ++i) {
        if (labels[i] >= n_classes())
            throw ConfigError("labels", "pixel " + std::to_string(i) + " has label " +
                                            std::to_string(labels[i]) + " >= class count");
        auto s = static_cast<std::size_t>(split[i]);
        if (s > 2) throw ConfigError("split", "pixel " + std::to_string(i) + " has bad split tag");
        ++seen[labels[i]][s];
    }
    for (std::size_t c = 0; c < n_classes(); ++c)
        for (std::size_t s = 0; s < 3; ++s)
            if (seen[c][s] == 0)
                throw ConfigError("split", "class '" + class_names[c] + "' missing from " +
                                               std::string(split_name(Split(s))) + " split");
}

void SyntheticConfig::validate() const {
    if (n_bands < 1) throw ConfigError("n_bands", "must be at least 1");
    if (classes.empty()) throw ConfigError("classes", "at least one class required");
    if (classes.size() > 65535) throw ConfigError("classes", "too many classes");
    for (const auto& c : classes)
        if (c.pixel_count < 4)
            throw ConfigError("classes", "class '" + c.name + "' needs at least 4 pixels");
    if (!(noise_sigma >= 0.0 && noise_sigma < 0.5))
        throw ConfigError("noise_sigma", "must lie in [0, 0.5)");
    if (!(endmember_smoothness > 0.0) || !std::isfinite(endmember_smoothness))
        throw ConfigError("endmember_smoothness", "must be positive");
    if (!(mixing_jitter >= 0.0 && mixing_jitter < 1.0))
        throw ConfigError("mixing_jitter", "must lie in [0, 1)");
    if (!(shift_jitter_nm >= 0.0) || !std::isfinite(shift_jitter_nm))
        throw ConfigError("shift_jitter_nm", "must be nonnegative");
}

namespace {

struct Bump {
    double center, width, amplitude;
};

struct Endmember {
    double base;
    std::vector<Bump> bumps;

    double at(double nm) const {
        double v = base;
        for (const auto& b : bumps) {
            double t = (nm - b.center) / b.width;
            v += b.amplitude * std::exp(-0.5 * t * t);
        }
        return v;
    }
};

Endmember random_endmember(std::mt19937_64& rng, double smoothness, double lo_nm, double hi_nm) {
    std::uniform_real_distribution<double> base(0.02, 0.15);
    std::uniform_int_distribution<int> count(3, 6);
    std::uniform_real_distribution<double> center(lo_nm, hi_nm);
    std::uniform_real_distribution<double> width(0.5 * smoothness, 2.0 * smoothness);
    std::uniform_real_distribution<double> amp(0.05, 0.45);
    Endmember e{base(rng), {}};
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        double c = center(rng);
        double w = width(rng);
        e.bumps.push_back({c, w, amp(rng)});
    }
    return e;
}

} // namespace

LabeledDataset generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);

    LabeledDataset ds;
    ds.n_bands = cfg.n_bands;
    ds.wavelengths = default_wavelengths(cfg.n_bands);
    const double lo = ds.wavelengths.front();
    const double hi = ds.wavelengths.back();

    std::vector<Endmember> endmembers;
    for (const auto& c : cfg.classes) {
        ds.class_names.push_back(c.name);
        endmembers.push_back(random_endmember(rng, cfg.endmember_smoothness, lo, hi));
    }

    const std::size_t n_classes = cfg.classes.size();
    std::size_t total = 0;
    for (const auto& c : cfg.classes) total += c.pixel_count;
    ds.values.reserve(total * cfg.n_bands);
    ds.labels.reserve(total);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> mixed(cfg.n_bands);

    for (std::size_t c = 0; c < n_classes; ++c) {
        for (std::size_t p = 0; p < cfg.classes[c].pixel_count; ++p) {
            // Dominant abundance in [0.6, 1]; the rest is shared by up to two
            // endmembers of other classes.
            double dominant = 1.0 - 0.4 * cfg.mixing_jitter * unit(rng);
            std::array<std::size_t, 2> others{c, c};
            std::array<double, 2> weight{0.0, 0.0};
            std::size_t n_others = 0;
            if (n_classes > 1 && dominant < 1.0) {
                n_others = std::min<std::size_t>(n_classes - 1, 1 + (unit(rng) < 0.5 ? 1 : 0));
                for (std::size_t k = 0; k < n_others; ++k) {
                    std::size_t o;
                    do {
                        o = std::uniform_int_distribution<std::size_t>(0, n_classes - 1)(rng);
                    } while (o == c || (k == 1 && o == others[0]));
                    others[k] = o;
                }
                double split = n_others == 2 ? unit(rng) : 1.0;
                weight[0] = (1.0 - dominant) * split;
                weight[1] = (1.0 - dominant) * (1.0 - split);
            }
            double shift = cfg.shift_jitter_nm > 0.0
                               ? cfg.shift_jitter_nm * (2.0 * unit(rng) - 1.0)
                               : 0.0;
            for (std::size_t b = 0; b < cfg.n_bands; ++b) {
                double nm = ds.wavelengths[b] - shift;
                double v = dominant * endmembers[c].at(nm);
                for (std::size_t k = 0; k < n_others; ++k) v += weight[k] * endmembers[others[k]].at(nm);
                mixed[b] = v;
            }
            for (std::size_t b = 0; b < cfg.n_bands; ++b) {
                double v = mixed[b];
                if (cfg.noise_sigma > 0.0) v += cfg.noise_sigma * noise(rng);
                ds.values.push_back(static_cast<float>(std::clamp(v, 0.0, 1.0)));
            }
            ds.labels.push_back(static_cast<std::uint16_t>(c));
        }
    }
    ds.split = stratified_split(ds.labels, cfg.seed ^ 0x9e3779b97f4a7c15ull, ds.class_names);
    return ds;
}

SplitCounts split_counts(std::size_t n) {
    // Quarters of n: train gets two, validation and test one each.
    const std::size_t q = n / 4, r = n % 4;
    SplitCounts c{2 * q, q, q};
    // Fractional parts in units of 1/4 are (2r mod 4, r, r).
    std::array<std::size_t, 3> frac_x4{(2 * r) % 4, r, r};
    std::size_t floor_train = (2 * r) / 4;
    c.train += floor_train;
    std::size_t left = n - c.train - c.validation - c.test;
    // Largest remainder; ties resolved validation, train, test.
    std::array<int, 3> order{1, 0, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return frac_x4[a] > frac_x4[b]; });
    for (std::size_t k = 0; k < left; ++k) {
        switch (order[k]) {
        case 0: ++c.train; break;
        case 1: ++c.validation; break;
        default: ++c.test; break;
        }
    }
    return c;
}

std::vector<Split> stratified_split(std::span<const std::uint16_t> labels, std::uint64_t seed,
                                    std::span<const std::string> class_names) {
    std::size_t n_classes = 0;
    for (auto l : labels) n_classes = std::max<std::size_t>(n_classes, l + 1u);
    std::vector<std::vector<std::size_t>> members(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

    std::vector<Split> out(labels.size(), Split::Train);
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < n_classes; ++c) {
        auto& m = members[c];
        if (m.empty()) continue;
        if (m.size() < 4) {
            std::string name = c < class_names.size() ? class_names[c] : std::to_string(c);
            throw ConfigError("labels", "class '" + name + "' has " + std::to_string(m.size()) +
                                            " pixels, at least 4 are required");
        }
        std::shuffle(m.begin(), m.end(), rng);
        auto counts = split_counts(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k < counts.train)
                out[m[k]] = Split::Train;
            else if (k < counts.train + counts.validation)
                out[m[k]] = Split::Validation;
            else
                out[m[k]] = Split::Test;
        }
    }
    return out;
}

std::vector<std::size_t> rgb_band_indices(std::span<const double> wavelengths) {
    constexpr std::array<double, 3> targets{670.0, 540.0, 470.0};
    if (wavelengths.empty()) throw ConfigError("wavelengths", "dataset has no bands");
    auto [lo, hi] = std::minmax_element(wavelengths.begin(), wavelengths.end());
    if (*lo > 470.0 + 0.5 * kBandStepNm || *hi < 670.0 - 0.5 * kBandStepNm)
        throw ConfigError("n_bands", "band grid does not cover 470-670 nm");
    std::vector<std::size_t> out;
    for (double t : targets) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < wavelengths.size(); ++k)
            if (std::abs(wavelengths[k] - t) < std::abs(wavelengths[best] - t)) best = k;
        out.push_back(best);
    }
    return out;
}

LabeledDataset extract_rgb(const LabeledDataset& ds) {
    auto idx = rgb_band_indices(ds.wavelengths);
    LabeledDataset out;
    out.n_bands = idx.size();
    for (auto k : idx) out.wavelengths.push_back(ds.wavelengths[k]);
    out.class_names = ds.class_names;
    out.labels = ds.labels;
    out.split = ds.split;
    out.values.reserve(ds.size() * idx.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto p = ds.pixel(i);
        for (auto k : idx) out.values.push_back(p[k]);
    }
    return out;
}

} // namespace hyperbench
