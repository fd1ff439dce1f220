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

#include "hyperbench/binary_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hyperbench/error.hpp"

namespace hyperbench {

static_assert(std::endian::native == std::endian::little,
              "on-disk formats assume a little-endian host");

namespace {

template <typename T>
void put(std::string& buf, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <typename T>
T get(std::string_view data, std::size_t pos) {
    T v;
    std::memcpy(&v, data.data() + pos, sizeof(T));
    return v;
}

} // namespace

void BinaryWriter::u16(std::uint16_t v) { put(buf_, v); }
void BinaryWriter::u32(std::uint32_t v) { put(buf_, v); }
void BinaryWriter::u64(std::uint64_t v) { put(buf_, v); }
void BinaryWriter::f32(float v) { put(buf_, v); }
void BinaryWriter::f64(double v) { put(buf_, v); }

void BinaryWriter::str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
}

void BinaryWriter::matrix(const Eigen::MatrixXd& m) {
    u32(static_cast<std::uint32_t>(m.rows()));
    u32(static_cast<std::uint32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
}

void BinaryWriter::vector(const Eigen::VectorXd& v) {
    u32(static_cast<std::uint32_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) f64(v[i]);
}

void BinaryReader::need(std::size_t n, const char* what) const {
    if (data_.size() - pos_ < n)
        throw ParseError(offset(), std::string("truncated input while reading ") + what);
}

std::string_view BinaryReader::bytes(std::size_t n) {
    need(n, "bytes");
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
}

std::uint8_t BinaryReader::u8() {
    need(1, "u8");
    return static_cast<std::uint8_t>(data_[pos_++]);
}

#define HB_READ(name, T)                 \
    T BinaryReader::name() {             \
        need(sizeof(T), #name);          \
        T v = get<T>(data_, pos_);       \
        pos_ += sizeof(T);               \
        return v;                        \
    }
HB_READ(u16, std::uint16_t)
HB_READ(u32, std::uint32_t)
HB_READ(u64, std::uint64_t)
HB_READ(f32, float)
HB_READ(f64, double)
#undef HB_READ

std::string BinaryReader::str() {
    auto n = u32();
    return std::string(bytes(n));
}

Eigen::MatrixXd BinaryReader::matrix() {
    auto rows = u32();
    auto cols = u32();
    need(std::size_t(rows) * cols * sizeof(double), "matrix payload");
    Eigen::MatrixXd m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) {
            auto at = offset();
            double v = f64();
            if (!std::isfinite(v)) throw ParseError(at, "non-finite matrix entry");
            m(r, c) = v;
        }
    return m;
}

Eigen::VectorXd BinaryReader::vector() {
    auto n = u32();
    need(std::size_t(n) * sizeof(double), "vector payload");
    Eigen::VectorXd v(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto at = offset();
        v[i] = f64();
        if (!std::isfinite(v[i])) throw ParseError(at, "non-finite vector entry");
    }
    return v;
}

void BinaryReader::expect_magic(std::string_view magic) {
    auto at = offset();
    if (remaining() < magic.size() || data_.substr(pos_, magic.size()) != magic)
        throw ParseError(at, "bad magic, expected \"" + std::string(magic.substr(0, 5)) + "\"");
    pos_ += magic.size();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace hyperbench
