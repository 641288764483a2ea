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

#include "ghostimg/reconstruct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <type_traits>

#include "ghostimg/patterns.hpp"

namespace ghostimg {
namespace {

std::size_t pixel_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

// Splits [0, items) into `threads` contiguous chunks and runs body(begin, end)
// on each. The first chunk runs on the calling thread.
void parallel_chunks(std::size_t items, int threads,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  const auto t = static_cast<std::size_t>(std::max(threads, 1));
  if (t == 1 || items <= 1) {
    body(0, items);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(t - 1);
  const std::size_t base = items / t;
  const std::size_t extra = items % t;
  std::size_t begin = 0;
  std::size_t first_end = 0;
  for (std::size_t c = 0; c < t; ++c) {
    const std::size_t end = begin + base + (c < extra ? 1 : 0);
    if (c == 0) {
      first_end = end;
    } else {
      workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
    begin = end;
  }
  body(0, first_end);
}

// Pattern words regrouped column-major: word k of pattern i sits at
// [k * count + i], so one word column streams contiguously.
struct WordColumns {
  std::size_t count = 0;
  std::vector<std::uint64_t> words;

  explicit WordColumns(const PatternBank& bank) : count(bank.count) {
    words.resize(bank.words.size());
    for (std::size_t i = 0; i < bank.count; ++i) {
      for (std::size_t k = 0; k < bank.words_per_pattern; ++k) {
        words[k * count + i] = bank.words[i * bank.words_per_pattern + k];
      }
    }
  }
};

// For pixels [p0, p1): acc[p - p0] += samples[i] for every pattern i with
// I_i(p) = 1. The sum over i runs in measurement order for every pixel.
template <typename Acc, typename Sample>
void accumulate_pixels(const WordColumns& cols, std::span<const Sample> samples,
                       std::size_t p0, std::size_t p1, std::span<Acc> acc) {
  const std::size_t k_first = p0 >> 6;
  const std::size_t k_last = (p1 - 1) >> 6;
  for (std::size_t k = k_first; k <= k_last; ++k) {
    const std::size_t word_begin = 64 * k;
    const std::size_t b0 = std::max(p0, word_begin) - word_begin;
    const std::size_t b1 = std::min(p1, word_begin + 64) - word_begin;
    Acc* out = acc.data() + word_begin - p0;
    const std::uint64_t* column = cols.words.data() + k * cols.count;
    if constexpr (std::is_integral_v<Acc>) {
      // Integer sums are order-free, so each lane reduces over its column.
      for (std::size_t b = b0; b < b1; ++b) {
        Acc sum = 0;
        for (std::size_t i = 0; i < cols.count; ++i) {
          sum += static_cast<Acc>(samples[i]) & (Acc{0} - static_cast<Acc>((column[i] >> b) & 1u));
        }
        out[b] += sum;
      }
    } else {
      // Floating-point sums keep measurement order per pixel.
      for (std::size_t i = 0; i < cols.count; ++i) {
        const std::uint64_t w = column[i];
        const Acc s = static_cast<Acc>(samples[i]);
        for (std::size_t b = b0; b < b1; ++b) {
          out[b] += static_cast<Acc>((w >> b) & 1u) * s;
        }
      }
    }
  }
}

void check_replay(const MeasurementSet& m, const GeneratorDescriptor& generator, std::size_t n,
                  int width, int height) {
  if (!(generator == m.generator) || n != m.n() || width != m.width || height != m.height) {
    throw Error(ErrorCode::kReplay,
                "reference tables (" + generator.to_string() + ", n=" + std::to_string(n) +
                    ", " + std::to_string(width) + "x" + std::to_string(height) +
                    ") do not match the measurement (" + m.generator.to_string() +
                    ", n=" + std::to_string(m.n()) + ", " + std::to_string(m.width) + "x" +
                    std::to_string(m.height) + ")");
  }
}

PatternBank replay(const MeasurementSet& m) {
  if (m.n() == 0) throw Error(ErrorCode::kPrecondition, "measurement has no samples");
  try {
    return generate_patterns(m.generator, m.width, m.height, m.n());
  } catch (const Error& e) {
    throw Error(ErrorCode::kReplay, std::string("cannot replay patterns: ") + e.what());
  }
}

// Per-pixel sums of S_i over the patterns that light the pixel.
std::vector<double> correlate(const PatternBank& bank, const WordColumns& cols,
                              std::span<const double> samples, int threads) {
  const std::size_t pixels = pixel_count(bank.width, bank.height);
  std::vector<double> acc(pixels, 0.0);
  parallel_chunks(pixels, effective_threads(threads, pixels),
                  [&](std::size_t p0, std::size_t p1) {
                    if (p0 == p1) return;
                    accumulate_pixels<double, double>(
                        cols, samples, p0, p1, std::span<double>(acc).subspan(p0, p1 - p0));
                  });
  return acc;
}

double sequential_sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

void FixedSchedule::validate(int width, int height) const {
  check_dimensions(width, height);
  const std::size_t pixels = pixel_count(width, height);
  if (lanes < 1 || pixels % static_cast<std::size_t>(lanes) != 0) {
    throw Error(ErrorCode::kPrecondition, "lane count " + std::to_string(lanes) +
                                              " does not divide " + std::to_string(pixels) +
                                              " pixels");
  }
  if (lanes % width != 0 && width % lanes != 0) {
    throw Error(ErrorCode::kPrecondition,
                "lane groups of " + std::to_string(lanes) + " would straddle rows of width " +
                    std::to_string(width));
  }
}

int effective_threads(int requested, std::size_t work_items) {
  const auto hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t t = static_cast<std::size_t>(std::max(requested, 1));
  t = std::min({t, static_cast<std::size_t>(hw), std::max<std::size_t>(work_items, 1)});
  return static_cast<int>(t);
}

FixedReferenceTables quantize_tables(const ReferenceTables& tables,
                                     const FixedSchedule& schedule) {
  FixedReferenceTables q;
  q.mean_r = fixed_from_real(tables.mean_r, schedule.fmt_mean_r, Rounding::kTruncate,
                             OverflowMode::kStrict);
  q.fmt_mean_ri = schedule.fmt_mean_ri;
  q.mean_ri.reserve(tables.mean_ri.size());
  for (double v : tables.mean_ri) {
    q.mean_ri.push_back(
        fixed_from_real(v, schedule.fmt_mean_ri, Rounding::kTruncate, OverflowMode::kStrict)
            .raw());
  }
  q.n = tables.n;
  q.generator = tables.generator;
  q.width = tables.width;
  q.height = tables.height;
  return q;
}

ReconstructedImage reconstruct_gi(const MeasurementSet& m, ExecutionOptions exec) {
  const PatternBank bank = replay(m);
  const WordColumns cols(bank);
  const std::size_t pixels = pixel_count(m.width, m.height);
  const std::vector<double> sum_si = correlate(bank, cols, m.samples, exec.threads);
  const std::vector<double> ones(m.n(), 1.0);
  const std::vector<double> sum_i = correlate(bank, cols, ones, exec.threads);

  const double n = static_cast<double>(m.n());
  const double mean_s = sequential_sum(m.samples) / n;
  ReconstructedImage out{m.width, m.height, std::vector<double>(pixels), Engine::kFloatGi};
  for (std::size_t p = 0; p < pixels; ++p) {
    out.data[p] = sum_si[p] / n - mean_s * (sum_i[p] / n);
  }
  return out;
}

ReconstructedImage reconstruct_dgi_float(const MeasurementSet& m, const ReferenceTables& ref,
                                         ExecutionOptions exec) {
  check_replay(m, ref.generator, ref.n, ref.width, ref.height);
  if (ref.mean_r == 0.0) {
    throw Error(ErrorCode::kZeroMeanR, "<R> is zero; DGI is undefined for dark patterns");
  }
  const PatternBank bank = replay(m);
  const WordColumns cols(bank);
  const std::size_t pixels = pixel_count(m.width, m.height);
  const std::vector<double> sum_si = correlate(bank, cols, m.samples, exec.threads);

  const double n = static_cast<double>(m.n());
  const double ratio = (sequential_sum(m.samples) / n) / ref.mean_r;
  ReconstructedImage out{m.width, m.height, std::vector<double>(pixels), Engine::kFloatDgi};
  for (std::size_t p = 0; p < pixels; ++p) {
    out.data[p] = sum_si[p] / n - ratio * ref.mean_ri[p];
  }
  return out;
}

FixedReconstruction reconstruct_dgi_fixed(const MeasurementSet& m,
                                          const FixedReferenceTables& ref,
                                          const FixedSchedule& schedule,
                                          ExecutionOptions exec) {
  schedule.validate(m.width, m.height);
  if (!m.adc_bits) {
    throw Error(ErrorCode::kPrecondition, "the fixed-point engine needs quantized samples");
  }
  const std::size_t n = m.n();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::kNonPowerOfTwo,
                "the fixed-point engine needs a power-of-two pattern count, got " +
                    std::to_string(n));
  }
  check_replay(m, ref.generator, ref.n, ref.width, ref.height);
  if (!(ref.mean_r.format() == schedule.fmt_mean_r) ||
      !(ref.fmt_mean_ri == schedule.fmt_mean_ri)) {
    throw Error(ErrorCode::kFormatMismatch, "fixed tables were quantized for another schedule");
  }
  const int shift = std::countr_zero(n);
  const FixedFormat acc_fmt = FixedFormat::make(false, schedule.fmt_s.int_bits + shift,
                                                schedule.fmt_s.frac_bits);

  // Sample register: every S_i must be representable as-is.
  std::vector<std::int64_t> s_raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    s_raw[i] = fixed_from_real(m.samples[i], schedule.fmt_s, Rounding::kTruncate,
                               OverflowMode::kStrict)
                   .raw();
  }
  auto mean_of_sum = [&](std::int64_t sum, FixedFormat target) {
    return fixed_convert(fixed_div_pow2(FixedValue::from_raw(sum, acc_fmt), shift), target,
                         Rounding::kTruncate, OverflowMode::kStrict);
  };

  // <S> first, then the lane-parallel <S*I> pass.
  std::int64_t sum_s = 0;
  for (std::int64_t s : s_raw) sum_s += s;
  const FixedValue mean_s = mean_of_sum(sum_s, schedule.fmt_mean_s);

  const PatternBank bank = replay(m);
  const WordColumns cols(bank);
  const std::size_t pixels = pixel_count(m.width, m.height);
  const auto lanes = static_cast<std::size_t>(schedule.lanes);
  const std::size_t groups = pixels / lanes;
  std::vector<std::int64_t> sum_si(pixels, 0);
  // Lane groups are visited in row order; group g covers pixels
  // [g * lanes, (g + 1) * lanes), i.e. lanes / width rows at a time.
  parallel_chunks(groups, effective_threads(exec.threads, groups),
                  [&](std::size_t g0, std::size_t g1) {
                    for (std::size_t g = g0; g < g1; ++g) {
                      const std::size_t p0 = g * lanes;
                      accumulate_pixels<std::int64_t, std::int64_t>(
                          cols, s_raw, p0, p0 + lanes,
                          std::span<std::int64_t>(sum_si).subspan(p0, lanes));
                    }
                  });

  FixedReconstruction out;
  out.format = schedule.fmt_out;
  out.raw.resize(pixels);
  out.image = ReconstructedImage{m.width, m.height, std::vector<double>(pixels),
                                 Engine::kFixedDgi};
  parallel_chunks(pixels, effective_threads(exec.threads, pixels),
                  [&](std::size_t p0, std::size_t p1) {
                    for (std::size_t p = p0; p < p1; ++p) {
                      const FixedValue mean_si = mean_of_sum(sum_si[p], schedule.fmt_mean_si);
                      const FixedValue mean_ri = FixedValue::from_raw(ref.mean_ri[p], ref.fmt_mean_ri);
                      const FixedValue lhs = fixed_mul(ref.mean_r, mean_si);
                      const FixedValue rhs = fixed_mul(mean_s, mean_ri);
                      const FixedFormat common = common_format(lhs.format(), rhs.format());
                      const FixedValue diff = fixed_sub(fixed_convert(lhs, common),
                                                        fixed_convert(rhs, common));
                      const FixedValue o = fixed_convert(diff, schedule.fmt_out,
                                                         Rounding::kTruncate,
                                                         OverflowMode::kStrict);
                      out.raw[p] = o.raw();
                      out.image.data[p] = o.to_double();
                    }
                  });
  return out;
}

DisplayImage normalize_for_display(const ReconstructedImage& image, int bits) {
  if (bits < 1 || bits > 16) {
    throw Error(ErrorCode::kPrecondition, "display depth must be 1..16 bits");
  }
  if (image.data.empty()) throw Error(ErrorCode::kPrecondition, "cannot normalize an empty image");
  DisplayImage out;
  out.width = image.width;
  out.height = image.height;
  out.bits = bits;
  out.data.assign(image.data.size(), 0);
  const auto [lo_it, hi_it] = std::minmax_element(image.data.begin(), image.data.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return out;
  const double top = static_cast<double>(out.max_value());
  for (std::size_t p = 0; p < image.data.size(); ++p) {
    const double v = std::nearbyint((image.data[p] - lo) / (hi - lo) * top);
    out.data[p] = static_cast<std::uint16_t>(std::clamp(v, 0.0, top));
  }
  return out;
}

}  // namespace ghostimg
