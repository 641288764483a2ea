// Copyright 2026 The ghostimg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GHOSTIMG_IO_HPP_
#define GHOSTIMG_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "ghostimg/core.hpp"
#include "ghostimg/forward.hpp"
#include "ghostimg/reconstruct.hpp"

namespace ghostimg {

// --- PGM ---------------------------------------------------------------------
// Reads P2 (plain) and P5 (raw, 1 or 2 bytes per sample, big-endian) with
// maxval in 1..65535; pixel values are scaled by 1 / maxval.
ObjectImage decode_pgm(std::string_view bytes);
ObjectImage read_pgm(const std::filesystem::path& path);

// Always P5 with maxval 2^bits - 1.
std::string encode_pgm(const DisplayImage& image);
void write_pgm(const DisplayImage& image, const std::filesystem::path& path);
void write_pgm(const ObjectImage& image, const std::filesystem::path& path);

// round(T * (2^bits - 1)).
DisplayImage to_display(const ObjectImage& image, int bits = 8);

// --- Text formats -------------------------------------------------------------
//
//   GIMEAS1                      GIREF1                 GIFIX1
//   n <count>                    n <count>              n <count>
//   width <pixels>               width <pixels>         width <pixels>
//   height <pixels>              height <pixels>        height <pixels>
//   adc_bits <bits>|none         generator <desc>       generator <desc>
//   generator <desc>             mean_r <real>          mean_r_format u,11,14
//   <n samples, one per line>    <w*h mean_ri lines>    mean_r <raw>
//                                                       mean_ri_format u,11,14
//                                                       <w*h raw lines>
//
// Reals are written as the shortest decimal that round-trips; quantized
// samples and raw mantissas as plain integers.

inline constexpr std::string_view kMeasurementMagic = "GIMEAS1";
inline constexpr std::string_view kTablesMagic = "GIREF1";
inline constexpr std::string_view kFixedTablesMagic = "GIFIX1";

std::string serialize_measurement(const MeasurementSet& m);
MeasurementSet parse_measurement(std::string_view text);

std::string serialize_tables(const ReferenceTables& t);
ReferenceTables parse_tables(std::string_view text);

std::string serialize_fixed_tables(const FixedReferenceTables& t);
FixedReferenceTables parse_fixed_tables(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

MeasurementSet read_measurement(const std::filesystem::path& path);
void write_measurement(const MeasurementSet& m, const std::filesystem::path& path);

}  // namespace ghostimg

#endif  // GHOSTIMG_IO_HPP_
