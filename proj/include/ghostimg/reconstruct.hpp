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

#ifndef GHOSTIMG_RECONSTRUCT_HPP_
#define GHOSTIMG_RECONSTRUCT_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ghostimg/core.hpp"
#include "ghostimg/fixed.hpp"
#include "ghostimg/forward.hpp"

namespace ghostimg {

// Number formats and lane count of the fixed-point datapath.
//
// With 12-bit samples and n = 2^14 patterns, every sum of S_i fits 26 bits,
// so the averages <S> and <S*I> are exact 14-bit shifts into (u,12,14).
// R_i <= 1024 for a 32x32 frame puts <R> and <R*I> in (u,11,14). The two
// division-free products land in (u,23,28); their difference is below 2^23 in
// magnitude and is stored as (s,23,28).
struct FixedSchedule {
  int lanes = 64;
  FixedFormat fmt_s{false, 12, 0};
  FixedFormat fmt_mean_s{false, 12, 14};
  FixedFormat fmt_mean_si{false, 12, 14};
  FixedFormat fmt_mean_r{false, 11, 14};
  FixedFormat fmt_mean_ri{false, 11, 14};
  FixedFormat fmt_out{true, 23, 28};

  // Lanes must tile the frame in whole lane groups that never straddle a
  // row boundary unless they cover whole rows. Throws kPrecondition.
  void validate(int width, int height) const;

  friend bool operator==(const FixedSchedule&, const FixedSchedule&) = default;
};

// ReferenceTables quantized into the schedule's <R> and <R*I> formats, the
// form the datapath keeps in its registers and table RAM.
struct FixedReferenceTables {
  FixedValue mean_r;
  FixedFormat fmt_mean_ri;
  std::vector<std::int64_t> mean_ri;  // raw mantissas
  std::size_t n = 0;
  GeneratorDescriptor generator;
  int width = 0;
  int height = 0;

  friend bool operator==(const FixedReferenceTables&, const FixedReferenceTables&) = default;
};

FixedReferenceTables quantize_tables(const ReferenceTables& tables,
                                     const FixedSchedule& schedule);

struct ExecutionOptions {
  // Worker threads. Capped at the hardware concurrency and the amount of
  // independent work; results never depend on it.
  int threads = 1;
};

int effective_threads(int requested, std::size_t work_items);

// Original computational GI: <S*I> - <S><I>.
ReconstructedImage reconstruct_gi(const MeasurementSet& m, ExecutionOptions exec = {});

// Floating-point DGI: <S*I> - (<S>/<R>) <R*I>.
ReconstructedImage reconstruct_dgi_float(const MeasurementSet& m, const ReferenceTables& ref,
                                         ExecutionOptions exec = {});

struct FixedReconstruction {
  ReconstructedImage image;  // raw * 2^-frac_bits
  FixedFormat format;
  std::vector<std::int64_t> raw;
};

// Division-free DGI: <R><S*I> - <S><R*I>, left unnormalized by <R>.
FixedReconstruction reconstruct_dgi_fixed(const MeasurementSet& m,
                                          const FixedReferenceTables& ref,
                                          const FixedSchedule& schedule = {},
                                          ExecutionOptions exec = {});

// Affine min-max map onto [0, 2^bits - 1] with round-to-nearest. A constant
// image maps to all zeros.
DisplayImage normalize_for_display(const ReconstructedImage& image, int bits = 8);

}  // namespace ghostimg

#endif  // GHOSTIMG_RECONSTRUCT_HPP_
