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

#include "ghostimg/forward.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace ghostimg {
namespace {

void check_same_dims(const ObjectImage& object, const Pattern& pattern) {
  if (object.width() != pattern.width() || object.height() != pattern.height()) {
    throw Error(ErrorCode::kDimension,
                "object is " + std::to_string(object.width()) + "x" +
                    std::to_string(object.height()) + " but pattern is " +
                    std::to_string(pattern.width()) + "x" + std::to_string(pattern.height()));
  }
}

void check_count(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kPrecondition, "number of patterns must be at least 1");
}

void check_adc_bits(std::optional<int> adc_bits) {
  if (adc_bits && (*adc_bits < 1 || *adc_bits > kMaxAdcBits)) {
    throw Error(ErrorCode::kPrecondition,
                "adc bits must be in 1.." + std::to_string(kMaxAdcBits));
  }
}

// Sum of T over the set bits of the packed pattern, in pixel order.
double masked_sum(std::span<const double> values, std::span<const std::uint64_t> words) {
  double sum = 0.0;
  for (std::size_t k = 0; k < words.size(); ++k) {
    std::uint64_t w = words[k];
    while (w != 0) {
      sum += values[64 * k + static_cast<std::size_t>(std::countr_zero(w))];
      w &= w - 1;
    }
  }
  return sum;
}

}  // namespace

void MeasurementSet::validate() const {
  check_dimensions(width, height);
  check_adc_bits(adc_bits);
  const double top = adc_bits ? std::ldexp(1.0, *adc_bits) : 0.0;
  for (double s : samples) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kPrecondition, "bucket samples must be finite and >= 0");
    }
    if (adc_bits && (s != std::floor(s) || s >= top)) {
      throw Error(ErrorCode::kPrecondition,
                  "quantized sample " + std::to_string(s) + " is not an integer below 2^" +
                      std::to_string(*adc_bits));
    }
  }
}

double bucket_signal(const ObjectImage& object, const Pattern& pattern) {
  check_same_dims(object, pattern);
  return masked_sum(object.data(), pattern.words());
}

double pattern_intensity(const Pattern& pattern) {
  return static_cast<double>(pattern.popcount());
}

std::uint32_t quantize_sample(double sample, double full_scale, int adc_bits) {
  check_adc_bits(adc_bits);
  const double top = std::ldexp(1.0, adc_bits) - 1.0;
  const double code = std::nearbyint(sample / full_scale * std::ldexp(1.0, adc_bits));
  return static_cast<std::uint32_t>(std::clamp(code, 0.0, top));
}

MeasurementSet simulate_measurement(const ObjectImage& object,
                                    const GeneratorDescriptor& generator, std::size_t n,
                                    std::optional<int> adc_bits, NoiseModel noise) {
  check_count(n);
  check_adc_bits(adc_bits);
  if (noise.sigma < 0.0) throw Error(ErrorCode::kPrecondition, "noise sigma must be >= 0");

  PatternStream stream(generator, object.width(), object.height());
  std::vector<std::uint64_t> words(stream.words_per_pattern());
  std::mt19937_64 noise_rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, noise.sigma > 0.0 ? noise.sigma : 1.0);
  const double full_scale = static_cast<double>(object.size());

  MeasurementSet m;
  m.generator = generator;
  m.width = object.width();
  m.height = object.height();
  m.adc_bits = adc_bits;
  m.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    stream.next_words(words);
    double s = masked_sum(object.data(), words);
    if (noise.sigma > 0.0) s = std::max(0.0, s + gauss(noise_rng));
    if (adc_bits) s = quantize_sample(s, full_scale, *adc_bits);
    m.samples.push_back(s);
  }
  return m;
}

ReferenceTables build_reference_tables(const GeneratorDescriptor& generator, std::size_t n,
                                       int width, int height) {
  check_count(n);
  PatternStream stream(generator, width, height);
  std::vector<std::uint64_t> words(stream.words_per_pattern());
  const std::size_t pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  // R_i and every partial sum are integers below 2^53, so the sums are exact.
  std::uint64_t sum_r = 0;
  std::vector<std::uint64_t> sum_ri(pixels, 0);
  for (std::size_t i = 0; i < n; ++i) {
    stream.next_words(words);
    std::uint64_t r = 0;
    for (std::uint64_t w : words) r += static_cast<std::uint64_t>(std::popcount(w));
    sum_r += r;
    for (std::size_t k = 0; k < words.size(); ++k) {
      std::uint64_t w = words[k];
      while (w != 0) {
        sum_ri[64 * k + static_cast<std::size_t>(std::countr_zero(w))] += r;
        w &= w - 1;
      }
    }
  }
  ReferenceTables t;
  t.n = n;
  t.generator = generator;
  t.width = width;
  t.height = height;
  const double dn = static_cast<double>(n);
  t.mean_r = static_cast<double>(sum_r) / dn;
  t.mean_ri.resize(pixels);
  for (std::size_t p = 0; p < pixels; ++p) t.mean_ri[p] = static_cast<double>(sum_ri[p]) / dn;
  return t;
}

}  // namespace ghostimg
