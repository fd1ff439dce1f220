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

#ifndef HYPERBENCH_MODELS_HPP
#define HYPERBENCH_MODELS_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "hyperbench/autoencoder.hpp"
#include "hyperbench/compressor.hpp"
#include "hyperbench/ica.hpp"
#include "hyperbench/kpca.hpp"

namespace hyperbench {

/// Per-method settings for fit_compressor. Latent sizes and seeds in the
/// nested configs are overridden by the call arguments.
struct FitOptions {
    KpcaParams kpca;
    IcaParams ica;
    AeConfig ae;
};

/// Fits `method` with latent size `d` on the rows of `train`. `val` is only
/// used by the autoencoders (restart selection); it may be empty.
std::unique_ptr<Compressor> fit_compressor(Method method, const Eigen::MatrixXd& train,
                                           const Eigen::MatrixXd& val, std::size_t d,
                                           std::uint64_t seed, const FitOptions& opts = {});

inline constexpr std::string_view kModelMagic = "HCMP1";

/// "HCMP1", the method name, then the model's named sections.
std::string serialize_model(const Compressor& c);
std::unique_ptr<Compressor> deserialize_model(std::string_view bytes);

void save_model(const Compressor& c, const std::filesystem::path& path);
std::unique_ptr<Compressor> load_model(const std::filesystem::path& path);

} // namespace hyperbench

#endif
