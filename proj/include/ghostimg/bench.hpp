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

#ifndef GHOSTIMG_BENCH_HPP_
#define GHOSTIMG_BENCH_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghostimg/core.hpp"
#include "ghostimg/patterns.hpp"

namespace ghostimg {

inline constexpr int kMinBenchRepeats = 20;

struct BenchConfig {
  Engine engine = Engine::kFixedDgi;
  std::vector<int> lanes{1, 16, 64};
  // Worker threads per run; empty pairs each lane count with the same number
  // of threads. A non-empty list is crossed with `lanes`.
  std::vector<int> threads;
  std::size_t n = 16384;
  int width = 32;
  int height = 32;
  int repeat = kMinBenchRepeats;
  int warmup = 2;
  GeneratorDescriptor generator = GeneratorDescriptor::mseq(1);
  std::optional<ObjectImage> object;  // default: glyph_object(width, height)
};

struct BenchReport {
  Engine engine = Engine::kFixedDgi;
  int lanes = 0;
  int threads = 0;
  int effective_threads = 0;
  std::size_t n = 0;
  int width = 0;
  int height = 0;
  double median_ms = 0.0;
  std::vector<double> run_ms;

  // Reconstructions per second at the median time; also the frame rate.
  double throughput_hz() const { return median_ms > 0.0 ? 1000.0 / median_ms : 0.0; }
};

// Binary test object: a dark "F" glyph on a bright field, scaled to the frame.
ObjectImage glyph_object(int width, int height);

// Times the reconstruction call (pattern replay included, measurement
// simulation and reference tables excluded).
std::vector<BenchReport> run_bench(const BenchConfig& config);

std::string format_bench_table(const std::vector<BenchReport>& reports);
// One `key=value` line per report.
std::string format_bench_line(const BenchReport& report);

}  // namespace ghostimg

#endif  // GHOSTIMG_BENCH_HPP_
