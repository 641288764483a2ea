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

// Random valid instances of every persisted type, for round-trip checks.

#ifndef GHOSTIMG_TESTS_RANDOM_INSTANCES_HPP_
#define GHOSTIMG_TESTS_RANDOM_INSTANCES_HPP_

#include <bit>
#include <cmath>
#include <random>

#include "ghostimg/forward.hpp"
#include "ghostimg/reconstruct.hpp"

namespace ghostimg::testing {

inline GeneratorDescriptor random_generator(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: {
      GeneratorDescriptor g = GeneratorDescriptor::mseq(rng() | 1u);
      if (rng() % 2) g.taps = taps_to_mask(std::vector<int>{64, 4, 3, 1});
      return g;
    }
    case 1: {
      GeneratorDescriptor g = GeneratorDescriptor::lcg(rng());
      if (rng() % 2) {
        g.lcg_multiplier = rng() | 1u;
        g.lcg_increment = rng();
      }
      return g;
    }
    default:
      return GeneratorDescriptor::mt(rng() & 0xffffffffu);
  }
}

// A double with a random mantissa and a modest exponent, never negative.
inline double random_real(std::mt19937_64& rng) {
  const double mantissa = std::ldexp(static_cast<double>(rng() >> 11), -53);
  return std::ldexp(mantissa, static_cast<int>(rng() % 24) - 8);
}

inline MeasurementSet random_measurement(std::mt19937_64& rng) {
  MeasurementSet m;
  m.width = 1 + static_cast<int>(rng() % 40);
  m.height = 1 + static_cast<int>(rng() % 40);
  m.generator = random_generator(rng);
  const std::size_t n = 1 + rng() % 200;
  if (rng() % 2) {
    m.adc_bits = 1 + static_cast<int>(rng() % kMaxAdcBits);
    for (std::size_t i = 0; i < n; ++i) {
      m.samples.push_back(static_cast<double>(rng() % (std::uint64_t{1} << *m.adc_bits)));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) m.samples.push_back(random_real(rng));
  }
  return m;
}

inline ReferenceTables random_tables(std::mt19937_64& rng) {
  ReferenceTables t;
  t.width = 1 + static_cast<int>(rng() % 20);
  t.height = 1 + static_cast<int>(rng() % 20);
  t.n = 1 + rng() % 100000;
  t.generator = random_generator(rng);
  t.mean_r = random_real(rng);
  for (int p = 0; p < t.width * t.height; ++p) t.mean_ri.push_back(random_real(rng));
  return t;
}

inline FixedReferenceTables random_fixed_tables(std::mt19937_64& rng) {
  FixedReferenceTables t;
  t.width = 1 + static_cast<int>(rng() % 20);
  t.height = 1 + static_cast<int>(rng() % 20);
  t.n = std::size_t{1} << (rng() % 20);
  t.generator = random_generator(rng);
  auto random_format = [&] {
    const bool is_signed = rng() % 2;
    const int ib = static_cast<int>(rng() % 30);
    const int fb = static_cast<int>(rng() % 30) + (ib == 0 ? 1 : 0);
    return FixedFormat::make(is_signed, ib, fb);
  };
  auto random_raw = [&](FixedFormat f) {
    const auto span = static_cast<std::uint64_t>(f.max_raw() - f.min_raw()) + 1;
    return f.min_raw() + static_cast<std::int64_t>(rng() % span);
  };
  const FixedFormat fr = random_format();
  t.mean_r = FixedValue::from_raw(random_raw(fr), fr);
  t.fmt_mean_ri = random_format();
  for (int p = 0; p < t.width * t.height; ++p) t.mean_ri.push_back(random_raw(t.fmt_mean_ri));
  return t;
}

inline DisplayImage random_display(std::mt19937_64& rng) {
  DisplayImage d;
  d.width = 1 + static_cast<int>(rng() % 40);
  d.height = 1 + static_cast<int>(rng() % 40);
  d.bits = 1 + static_cast<int>(rng() % 16);
  for (int p = 0; p < d.width * d.height; ++p) {
    d.data.push_back(static_cast<std::uint16_t>(rng() % (std::uint64_t{d.max_value()} + 1)));
  }
  return d;
}

}  // namespace ghostimg::testing

#endif  // GHOSTIMG_TESTS_RANDOM_INSTANCES_HPP_
