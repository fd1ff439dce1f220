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

#ifndef HYPERBENCH_BINARY_IO_HPP
#define HYPERBENCH_BINARY_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hyperbench {

// Little-endian encoder used by every on-disk format of the project.
class BinaryWriter {
public:
    void bytes(std::string_view b) { buf_.append(b); }
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void f32(float v);
    void f64(double v);
    /// u32 length followed by the raw bytes.
    void str(std::string_view s);
    /// u32 rows, u32 cols, then rows*cols f64 in row-major order.
    void matrix(const Eigen::MatrixXd& m);
    void vector(const Eigen::VectorXd& v);

    const std::string& data() const noexcept { return buf_; }
    std::string take() noexcept { return std::move(buf_); }

private:
    std::string buf_;
};

// Bounds-checked decoder; every failure throws ParseError carrying the
// offset of the field that could not be read.
class BinaryReader {
public:
    explicit BinaryReader(std::string_view data, std::uint64_t base_offset = 0)
        : data_(data), base_(base_offset) {}

    std::string_view bytes(std::size_t n);
    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    float f32();
    double f64();
    std::string str();
    Eigen::MatrixXd matrix();
    Eigen::VectorXd vector();

    /// Absolute offset of the next unread byte.
    std::uint64_t offset() const noexcept { return base_ + pos_; }
    bool at_end() const noexcept { return pos_ == data_.size(); }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }

    /// Checks the magic string and throws ParseError at its offset otherwise.
    void expect_magic(std::string_view magic);

private:
    void need(std::size_t n, const char* what) const;

    std::string_view data_;
    std::uint64_t base_;
    std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace hyperbench

#endif
