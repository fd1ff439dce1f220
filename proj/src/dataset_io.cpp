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

#include "hyperbench/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "hyperbench/binary_io.hpp"
#include "hyperbench/error.hpp"

namespace hyperbench {

namespace {

bool on_default_grid(const LabeledDataset& ds) {
    return ds.wavelengths == default_wavelengths(ds.n_bands);
}

std::string format_wavelength(double nm) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, nm);
    return std::string(buf, res.ptr);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

} // namespace

std::string encode_hspx(const LabeledDataset& ds) {
    ds.validate();
    if (!on_default_grid(ds))
        throw ConfigError("wavelengths", "HSPX stores only the default 400+2k nm grid; use CSV");
    BinaryWriter w;
    w.bytes(kHspxMagic);
    w.u32(static_cast<std::uint32_t>(ds.size()));
    w.u32(static_cast<std::uint32_t>(ds.n_bands));
    w.u32(static_cast<std::uint32_t>(ds.n_classes()));
    for (const auto& name : ds.class_names) w.str(name);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        w.u8(static_cast<std::uint8_t>(ds.split[i]));
        w.u16(ds.labels[i]);
        for (float v : ds.pixel(i)) w.f32(v);
    }
    return w.take();
}

LabeledDataset decode_hspx(std::string_view bytes) {
    BinaryReader r(bytes);
    r.expect_magic(kHspxMagic);
    LabeledDataset ds;
    const auto n_pixels = r.u32();
    auto at = r.offset();
    ds.n_bands = r.u32();
    if (ds.n_bands == 0) throw ParseError(at, "n_bands must be positive");
    at = r.offset();
    const auto n_classes = r.u32();
    if (n_classes == 0 || n_classes > 65536) throw ParseError(at, "bad class count");
    ds.wavelengths = default_wavelengths(ds.n_bands);
    for (std::uint32_t c = 0; c < n_classes; ++c) ds.class_names.push_back(r.str());

    const std::size_t record = 3 + 4 * ds.n_bands;
    if (r.remaining() / record < n_pixels)
        throw ParseError(r.offset() + r.remaining(), "truncated pixel payload");
    ds.values.reserve(std::size_t(n_pixels) * ds.n_bands);
    ds.labels.reserve(n_pixels);
    ds.split.reserve(n_pixels);
    for (std::uint32_t i = 0; i < n_pixels; ++i) {
        at = r.offset();
        auto tag = r.u8();
        if (tag > 2) throw ParseError(at, "bad split tag " + std::to_string(tag));
        ds.split.push_back(static_cast<Split>(tag));
        at = r.offset();
        auto label = r.u16();
        if (label >= n_classes) throw ParseError(at, "label out of range");
        ds.labels.push_back(label);
        for (std::size_t b = 0; b < ds.n_bands; ++b) {
            at = r.offset();
            float v = r.f32();
            if (std::isnan(v)) throw ParseError(at, "NaN reflectance");
            if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
                throw ParseError(at, "reflectance outside [0,1]");
            ds.values.push_back(v);
        }
    }
    if (!r.at_end()) throw ParseError(r.offset(), "trailing bytes after pixel payload");
    try {
        ds.validate();
    } catch (const ConfigError& e) {
        throw ParseError(bytes.size(), std::string("invalid dataset: ") + e.what());
    }
    return ds;
}

std::string encode_csv(const LabeledDataset& ds) {
    ds.validate();
    std::string out = "label,split";
    for (double nm : ds.wavelengths) out += ",b" + format_wavelength(nm);
    out += '\n';
    char buf[32];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out += ds.class_names[ds.labels[i]];
        out += ',';
        out += split_name(ds.split[i]);
        for (float v : ds.pixel(i)) {
            auto res = std::to_chars(buf, buf + sizeof buf, v);
            out += ',';
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

LabeledDataset decode_csv(std::string_view text) {
    LabeledDataset ds;
    std::map<std::string, std::uint16_t, std::less<>> class_index;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        auto fields = split_fields(line);

        if (!header_seen) {
            if (fields.size() < 3 || fields[0] != "label" || fields[1] != "split")
                throw ParseError(line_no, "CSV header must start with label,split,b<nm>");
            for (std::size_t k = 2; k < fields.size(); ++k) {
                auto f = fields[k];
                double nm = 0.0;
                if (f.size() < 2 || f[0] != 'b' ||
                    std::from_chars(f.data() + 1, f.data() + f.size(), nm).ec != std::errc{})
                    throw ParseError(line_no, "bad band column '" + std::string(f) + "'");
                ds.wavelengths.push_back(nm);
            }
            ds.n_bands = ds.wavelengths.size();
            header_seen = true;
            continue;
        }

        if (fields.size() != ds.n_bands + 2)
            throw ParseError(line_no, "row " + std::to_string(line_no) + " has " +
                                          std::to_string(fields.size() - 2) + " values, header declares " +
                                          std::to_string(ds.n_bands) + " bands");
        std::string name(fields[0]);
        auto it = class_index.find(name);
        if (it == class_index.end()) {
            if (ds.class_names.size() >= 65536) throw ParseError(line_no, "too many classes");
            it = class_index.emplace(name, static_cast<std::uint16_t>(ds.class_names.size())).first;
            ds.class_names.push_back(name);
        }
        ds.labels.push_back(it->second);
        try {
            ds.split.push_back(parse_split(fields[1]));
        } catch (const ConfigError&) {
            throw ParseError(line_no, "row " + std::to_string(line_no) + " has unknown split '" +
                                          std::string(fields[1]) + "'");
        }
        for (std::size_t k = 2; k < fields.size(); ++k) {
            auto f = fields[k];
            float v = 0.0f;
            auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
                throw ParseError(line_no, "row " + std::to_string(line_no) + ": bad number '" +
                                              std::string(f) + "'");
            if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
                throw ParseError(line_no, "row " + std::to_string(line_no) +
                                              ": reflectance not finite or outside [0,1]");
            ds.values.push_back(v);
        }
    }
    if (!header_seen) throw ParseError(0, "empty CSV");
    try {
        ds.validate();
    } catch (const ConfigError& e) {
        throw ParseError(line_no, std::string("invalid dataset: ") + e.what());
    }
    return ds;
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
    if (path.extension() == ".csv")
        write_file(path, encode_csv(ds));
    else
        write_file(path, encode_hspx(ds));
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
    auto bytes = read_file(path);
    if (path.extension() == ".csv") return decode_csv(bytes);
    return decode_hspx(bytes);
}

} // namespace hyperbench
