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

#ifndef HYPERBENCH_COMPRESSOR_HPP
#define HYPERBENCH_COMPRESSOR_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperbench/binary_io.hpp"
#include "hyperbench/dataset.hpp"

namespace hyperbench {

enum class Method { Pca, Kpca, Ica, Ae, Dae };

inline constexpr Method kAllMethods[] = {Method::Pca, Method::Kpca, Method::Ica, Method::Ae,
                                         Method::Dae};

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

/// Latent size for a compression rate, rate = (n - d) / n in percent:
/// d = max(1, round_half_up(n * (1 - rate/100))). rate must be in [1, 99].
std::size_t dims_for_rate(std::size_t n, int rate_percent);

/// Encoded pixel.
struct CompressedVector {
    std::vector<double> values;
    Method source_method = Method::Pca;
    int source_rate = 0;
};

/// Named binary sections of a serialized model.
class ModelSections {
public:
    void add(std::string name, BinaryWriter w);
    /// Reader over a section payload; ParseError when absent.
    BinaryReader get(std::string_view name) const;
    bool has(std::string_view name) const;

    void write(BinaryWriter& w) const;
    static ModelSections read(BinaryReader& r);

private:
    struct Entry {
        std::string name;
        std::string payload;
        std::uint64_t offset = 0;  // of the payload within the file, for errors
    };
    std::vector<Entry> entries_;
};

/// A fitted encode/decode pair. Samples are rows. Fitted models are
/// immutable; all const members are safe to call concurrently.
class Compressor {
public:
    virtual ~Compressor() = default;

    virtual Method method() const = 0;
    virtual std::size_t input_dim() const = 0;
    virtual std::size_t latent_dim() const = 0;

    /// N x n -> N x d.
    Eigen::MatrixXd encode(const Eigen::MatrixXd& x) const;
    /// N x d -> N x n, every entry in [0,1].
    Eigen::MatrixXd decode(const Eigen::MatrixXd& z) const;

    CompressedVector encode_one(std::span<const double> x, int rate = 0) const;
    Spectrum decode_one(const CompressedVector& z) const;

    /// Non-fatal conditions met while fitting (reduced rank, no convergence, ...).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    virtual ModelSections sections() const = 0;

protected:
    virtual Eigen::MatrixXd encode_impl(const Eigen::MatrixXd& x) const = 0;
    virtual Eigen::MatrixXd decode_impl(const Eigen::MatrixXd& z) const = 0;

    std::vector<std::string> warnings_;
};

/// Clamps every entry into [0,1].
inline Eigen::MatrixXd clamp01(Eigen::MatrixXd m) {
    return m.cwiseMax(0.0).cwiseMin(1.0);
}

} // namespace hyperbench

#endif
