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

#include "hyperbench/models.hpp"

#include "hyperbench/error.hpp"
#include "hyperbench/pca.hpp"

namespace hyperbench {

std::unique_ptr<Compressor> fit_compressor(Method method, const Eigen::MatrixXd& train,
                                           const Eigen::MatrixXd& val, std::size_t d,
                                           std::uint64_t seed, const FitOptions& opts) {
    switch (method) {
    case Method::Pca:
        return std::make_unique<PcaModel>(PcaModel::fit(train, d));
    case Method::Kpca: {
        auto p = opts.kpca;
        p.seed = seed;
        return std::make_unique<KpcaModel>(KpcaModel::fit(train, d, p));
    }
    case Method::Ica: {
        auto p = opts.ica;
        p.seed = seed;
        return std::make_unique<IcaModel>(IcaModel::fit(train, d, p));
    }
    case Method::Ae:
    case Method::Dae: {
        auto cfg = opts.ae;
        cfg.variant = method == Method::Ae ? AeVariant::Ae : AeVariant::Dae;
        cfg.latent_dim = d;
        cfg.seed = seed;
        return std::make_unique<AeModel>(ae_train(train, val, cfg));
    }
    }
    throw ConfigError("method", "unknown method");
}

std::string serialize_model(const Compressor& c) {
    BinaryWriter w;
    w.bytes(kModelMagic);
    w.str(method_name(c.method()));
    c.sections().write(w);
    return w.take();
}

std::unique_ptr<Compressor> deserialize_model(std::string_view bytes) {
    BinaryReader r(bytes);
    r.expect_magic(kModelMagic);
    const auto at = r.offset();
    Method m;
    try {
        m = parse_method(r.str());
    } catch (const ConfigError& e) {
        throw ParseError(at, e.what());
    }
    auto sections = ModelSections::read(r);
    if (!r.at_end()) throw ParseError(r.offset(), "trailing bytes after model");
    switch (m) {
    case Method::Pca: return std::make_unique<PcaModel>(PcaModel::from_sections(sections));
    case Method::Kpca: return std::make_unique<KpcaModel>(KpcaModel::from_sections(sections));
    case Method::Ica: return std::make_unique<IcaModel>(IcaModel::from_sections(sections));
    case Method::Ae:
    case Method::Dae: {
        auto model = std::make_unique<AeModel>(AeModel::from_sections(sections));
        if (model->method() != m) throw ParseError(at, "method name disagrees with model body");
        return model;
    }
    }
    throw ParseError(at, "unknown method");
}

void save_model(const Compressor& c, const std::filesystem::path& path) {
    write_file(path, serialize_model(c));
}

std::unique_ptr<Compressor> load_model(const std::filesystem::path& path) {
    return deserialize_model(read_file(path));
}

} // namespace hyperbench
