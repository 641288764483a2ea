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

#ifndef GHOSTIMG_FORWARD_HPP_
#define GHOSTIMG_FORWARD_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ghostimg/core.hpp"
#include "ghostimg/patterns.hpp"

namespace ghostimg {

inline constexpr int kDefaultAdcBits = 12;
inline constexpr int kMaxAdcBits = 24;

// Bucket samples S_i in measurement order plus everything needed to replay
// the patterns that produced them.
struct MeasurementSet {
  std::vector<double> samples;
  GeneratorDescriptor generator;
  int width = 0;
  int height = 0;
  std::optional<int> adc_bits;

  std::size_t n() const noexcept { return samples.size(); }
  // Checks the sample invariants; throws kPrecondition.
  void validate() const;

  friend bool operator==(const MeasurementSet&, const MeasurementSet&) = default;
};

// Object-independent DGI terms: <R> and the per-pixel <R * I(x, y)>.
struct ReferenceTables {
  double mean_r = 0.0;
  std::vector<double> mean_ri;
  std::size_t n = 0;
  GeneratorDescriptor generator;
  int width = 0;
  int height = 0;

  friend bool operator==(const ReferenceTables&, const ReferenceTables&) = default;
};

// Optional additive Gaussian detector noise, applied before quantization.
struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// Sum over pixels of I * T.
double bucket_signal(const ObjectImage& object, const Pattern& pattern);
// Number of ON pixels.
double pattern_intensity(const Pattern& pattern);

// Mid-tread quantizer: full scale maps to 2^bits, output clamped to the top code.
std::uint32_t quantize_sample(double sample, double full_scale, int adc_bits);

MeasurementSet simulate_measurement(const ObjectImage& object,
                                    const GeneratorDescriptor& generator, std::size_t n,
                                    std::optional<int> adc_bits = kDefaultAdcBits,
                                    NoiseModel noise = {});

ReferenceTables build_reference_tables(const GeneratorDescriptor& generator, std::size_t n,
                                       int width, int height);

}  // namespace ghostimg

#endif  // GHOSTIMG_FORWARD_HPP_
