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

#include "hyperbench/compressor.hpp"

#include <cmath>

#include "hyperbench/error.hpp"
#include "hyperbench/linalg.hpp"

namespace hyperbench {

std::string_view method_name(Method m) {
    switch (m) {
    case Method::Pca: return "pca";
    case Method::Kpca: return "kpca";
    case Method::Ica: return "ica";
    case Method::Ae: return "ae";
    case Method::Dae: return "dae";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    for (auto m : kAllMethods)
        if (method_name(m) == name) return m;
    throw ConfigError("method", "unknown method '" + std::string(name) + "'");
}

std::size_t dims_for_rate(std::size_t n, int rate_percent) {
    if (rate_percent < 1 || rate_percent > 99)
        throw ConfigError("rate", "must lie in [1, 99], got " + std::to_string(rate_percent));
    if (n < 1) throw ConfigError("n", "band count must be positive");
    // round_half_up(n * (100 - rate) / 100) in integer arithmetic.
    std::size_t d = (n * std::size_t(100 - rate_percent) * 2 + 100) / 200;
    return std::max<std::size_t>(1, d);
}

void ModelSections::add(std::string name, BinaryWriter w) {
    entries_.push_back({std::move(name), w.take(), 0});
}

bool ModelSections::has(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return true;
    return false;
}

BinaryReader ModelSections::get(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return BinaryReader(e.payload, e.offset);
    throw ParseError(0, "model section '" + std::string(name) + "' missing");
}

void ModelSections::write(BinaryWriter& w) const {
    w.u32(static_cast<std::uint32_t>(entries_.size()));
    for (const auto& e : entries_) {
        w.str(e.name);
        w.u64(e.payload.size());
        w.bytes(e.payload);
    }
}

ModelSections ModelSections::read(BinaryReader& r) {
    ModelSections s;
    auto n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
        Entry e;
        e.name = r.str();
        auto at = r.offset();
        auto len = r.u64();
        if (len > r.remaining()) throw ParseError(at, "section '" + e.name + "' is truncated");
        e.offset = r.offset();
        e.payload = std::string(r.bytes(static_cast<std::size_t>(len)));
        s.entries_.push_back(std::move(e));
    }
    return s;
}

Eigen::MatrixXd Compressor::encode(const Eigen::MatrixXd& x) const {
    if (std::size_t(x.cols()) != input_dim())
        throw NumericError("encode: expected " + std::to_string(input_dim()) + " bands, got " +
                           std::to_string(x.cols()));
    check_finite(x, "encode input");
    return encode_impl(x);
}

Eigen::MatrixXd Compressor::decode(const Eigen::MatrixXd& z) const {
    if (std::size_t(z.cols()) != latent_dim())
        throw NumericError("decode: expected latent size " + std::to_string(latent_dim()) +
                           ", got " + std::to_string(z.cols()));
    check_finite(z, "decode input");
    return clamp01(decode_impl(z));
}

CompressedVector Compressor::encode_one(std::span<const double> x, int rate) const {
    Eigen::MatrixXd row = Eigen::Map<const Eigen::RowVectorXd>(x.data(), Eigen::Index(x.size()));
    Eigen::MatrixXd z = encode(row);
    CompressedVector out;
    out.values.assign(z.data(), z.data() + z.size());
    out.source_method = method();
    out.source_rate = rate;
    return out;
}

Spectrum Compressor::decode_one(const CompressedVector& z) const {
    Eigen::MatrixXd row = Eigen::Map<const Eigen::RowVectorXd>(z.values.data(),
                                                               Eigen::Index(z.values.size()));
    Eigen::MatrixXd x = decode(row);
    return Spectrum(x.data(), x.data() + x.size());
}

} // namespace hyperbench
