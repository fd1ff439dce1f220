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

#ifndef HYPERBENCH_DATASET_IO_HPP
#define HYPERBENCH_DATASET_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "hyperbench/dataset.hpp"

namespace hyperbench {

/*
 HSPX layout (all integers little-endian):

   "HSPX1\n"
   u32 n_pixels, u32 n_bands, u32 n_classes
   n_classes x (u32 byte length, UTF-8 name)
   n_pixels x (u8 split tag 0/1/2, u16 label, n_bands x f32 reflectance)

 The band grid is implicit (400 + 2k nm); datasets on any other grid must
 go through CSV, whose header carries the wavelengths.
*/
inline constexpr std::string_view kHspxMagic = "HSPX1\n";

std::string encode_hspx(const LabeledDataset& ds);
LabeledDataset decode_hspx(std::string_view bytes);

/// CSV: header `label,split,b400,b402,...`, one pixel per row, label given
/// by class name and split by train/val/test. Parse errors report the line.
std::string encode_csv(const LabeledDataset& ds);
LabeledDataset decode_csv(std::string_view text);

/// Picks the format by extension: `.csv` is CSV, anything else HSPX.
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset load_dataset(const std::filesystem::path& path);

} // namespace hyperbench

#endif
