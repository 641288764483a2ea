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

#include "ghostimg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "ghostimg/forward.hpp"
#include "ghostimg/reconstruct.hpp"

namespace ghostimg {
namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

ObjectImage glyph_object(int width, int height) {
  check_dimensions(width, height);
  std::vector<double> data(static_cast<std::size_t>(width) * height, 1.0);
  // Glyph strokes on a 32x32 design grid: [x0, x1) x [y0, y1).
  struct Box { int x0, x1, y0, y1; };
  constexpr Box kStrokes[] = {{8, 12, 6, 26}, {8, 24, 6, 10}, {8, 20, 14, 18}};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int gx = x * 32 / width;
      const int gy = y * 32 / height;
      for (const Box& b : kStrokes) {
        if (gx >= b.x0 && gx < b.x1 && gy >= b.y0 && gy < b.y1) {
          data[static_cast<std::size_t>(y) * width + x] = 0.0;
        }
      }
    }
  }
  return ObjectImage(width, height, std::move(data));
}

std::vector<BenchReport> run_bench(const BenchConfig& config) {
  if (config.repeat < 1) throw Error(ErrorCode::kPrecondition, "repeat must be at least 1");
  const ObjectImage object =
      config.object ? *config.object : glyph_object(config.width, config.height);
  const MeasurementSet m = simulate_measurement(object, config.generator, config.n);
  const ReferenceTables ref = build_reference_tables(config.generator, config.n,
                                                     object.width(), object.height());

  std::vector<std::pair<int, int>> grid;
  for (int lanes : config.lanes) {
    if (config.threads.empty()) {
      grid.emplace_back(lanes, lanes);
    } else {
      for (int t : config.threads) grid.emplace_back(lanes, t);
    }
  }

  // Each configuration gets its own schedule, tables and timing closure.
  struct Case {
    BenchReport report;
    FixedSchedule schedule;
    std::optional<FixedReferenceTables> fixed_ref;
  };
  std::vector<Case> cases;
  for (const auto& [lanes, threads] : grid) {
    Case c;
    c.schedule.lanes = lanes;
    if (config.engine == Engine::kFixedDgi) c.fixed_ref = quantize_tables(ref, c.schedule);
    BenchReport& r = c.report;
    r.engine = config.engine;
    r.lanes = lanes;
    r.threads = threads;
    const std::size_t work = object.size() / static_cast<std::size_t>(std::max(lanes, 1));
    r.effective_threads =
        effective_threads(threads, config.engine == Engine::kFixedDgi ? work : object.size());
    r.n = config.n;
    r.width = object.width();
    r.height = object.height();
    cases.push_back(std::move(c));
  }

  volatile double sink = 0.0;
  auto once = [&](const Case& c) {
    const ExecutionOptions exec{c.report.threads};
    switch (config.engine) {
      case Engine::kFloatGi: return reconstruct_gi(m, exec).data.front();
      case Engine::kFloatDgi: return reconstruct_dgi_float(m, ref, exec).data.front();
      case Engine::kFixedDgi:
        return reconstruct_dgi_fixed(m, *c.fixed_ref, c.schedule, exec).image.data.front();
    }
    return 0.0;
  };
  for (int w = 0; w < config.warmup; ++w) {
    for (const Case& c : cases) sink = sink + once(c);
  }
  // Round-robin over configurations so slow drifts in machine load hit every
  // configuration alike.
  for (int k = 0; k < config.repeat; ++k) {
    for (Case& c : cases) {
      const auto t0 = std::chrono::steady_clock::now();
      sink = sink + once(c);
      const auto t1 = std::chrono::steady_clock::now();
      c.report.run_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }

  std::vector<BenchReport> reports;
  for (Case& c : cases) {
    c.report.median_ms = median(c.report.run_ms);
    reports.push_back(std::move(c.report));
  }
  return reports;
}

std::string format_bench_table(const std::vector<BenchReport>& reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %6s %8s %9s %7s %7s %11s %14s\n", "engine", "lanes",
                "threads", "effective", "n", "dims", "median[ms]", "frame rate[Hz]");
  out << line;
  for (const BenchReport& r : reports) {
    const std::string dims = std::to_string(r.width) + "x" + std::to_string(r.height);
    std::snprintf(line, sizeof(line), "%-10s %6d %8d %9d %7zu %7s %11.3f %14.1f\n",
                  std::string(engine_name(r.engine)).c_str(), r.lanes, r.threads,
                  r.effective_threads, r.n, dims.c_str(), r.median_ms, r.throughput_hz());
    out << line;
  }
  return out.str();
}

std::string format_bench_line(const BenchReport& r) {
  return "BENCH engine=" + std::string(engine_name(r.engine)) +
         " lanes=" + std::to_string(r.lanes) + " threads=" + std::to_string(r.threads) +
         " effective_threads=" + std::to_string(r.effective_threads) +
         " n=" + std::to_string(r.n) + " dims=" + std::to_string(r.width) + "x" +
         std::to_string(r.height) + " runs=" + std::to_string(r.run_ms.size()) +
         " median_ms=" + fixed2(r.median_ms) + " throughput_hz=" + fixed2(r.throughput_hz()) +
         " frame_rate_hz=" + fixed2(r.throughput_hz());
}

}  // namespace ghostimg
