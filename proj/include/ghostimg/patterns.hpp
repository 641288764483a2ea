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

#ifndef GHOSTIMG_PATTERNS_HPP_
#define GHOSTIMG_PATTERNS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghostimg/core.hpp"

namespace ghostimg {

// --- 64-bit Fibonacci LFSR --------------------------------------------------
//
// Flip-flops M(1)..M(64) map to bits 0..63 of `state`. Each clock emits M(64),
// shifts M(k) <- M(k-1) and loads M(1) with the XOR of the tapped flip-flops.
// `taps` is a mask with bit (t - 1) set for every tap position t.

inline constexpr std::array<int, 4> kDefaultTaps{64, 63, 61, 60};

std::uint64_t taps_to_mask(std::span<const int> taps);
std::vector<int> mask_to_taps(std::uint64_t mask);
std::uint64_t default_tap_mask();

// True iff the feedback polynomial given by `tap_mask` is primitive, i.e. the
// register cycles through all 2^64 - 1 nonzero states.
bool is_maximal_length(std::uint64_t tap_mask);

struct LfsrState {
  std::uint64_t state = 1;
  std::uint64_t taps = 0;

  friend bool operator==(const LfsrState&, const LfsrState&) = default;
};

// One clock. Throws kZeroState on an all-zero register.
std::pair<LfsrState, int> lfsr_step(LfsrState s);

// 64 clocks at once. Bit j of the returned word is the j-th emitted bit.
std::pair<LfsrState, std::uint64_t> lfsr_leap64(LfsrState s);

// Precomputed byte-sliced leap matrix for one tap set.
class LeapTable {
 public:
  explicit LeapTable(std::uint64_t tap_mask);

  std::uint64_t taps() const noexcept { return taps_; }
  std::uint64_t advance(std::uint64_t state) const noexcept {
    std::uint64_t next = 0;
    for (int b = 0; b < 8; ++b) next ^= table_[b][(state >> (8 * b)) & 0xff];
    return next;
  }

 private:
  std::uint64_t taps_;
  std::array<std::array<std::uint64_t, 256>, 8> table_{};
};

// Shared, lazily built table; thread-safe.
std::shared_ptr<const LeapTable> leap_table_for(std::uint64_t tap_mask);

// --- Generator descriptors ---------------------------------------------------

enum class GeneratorKind { kMSequence, kLcg, kMersenneTwister };

std::string_view generator_kind_name(GeneratorKind kind);  // mseq / lcg / mt

inline constexpr std::uint64_t kLcgMultiplier = 6364136223846793005ULL;
inline constexpr std::uint64_t kLcgIncrement = 1442695040888963407ULL;

struct GeneratorDescriptor {
  GeneratorKind kind = GeneratorKind::kMSequence;
  std::uint64_t seed = 1;
  std::uint64_t taps = default_tap_mask();  // MSequence only
  std::uint64_t lcg_multiplier = kLcgMultiplier;
  std::uint64_t lcg_increment = kLcgIncrement;

  static GeneratorDescriptor mseq(std::uint64_t seed = 1);
  static GeneratorDescriptor lcg(std::uint64_t seed = 1);
  static GeneratorDescriptor mt(std::uint64_t seed = 1);

  // Throws kZeroState for a zero MSequence seed, kPrecondition for a
  // non-maximal tap set or an MT seed wider than 32 bits.
  void validate() const;

  // Canonical `kind:seed[:params]`, e.g. `mseq:1:64,63,61,60`,
  // `lcg:7:6364136223846793005,1442695040888963407`, `mt:5489`.
  std::string to_string() const;
  static GeneratorDescriptor parse(std::string_view text);

  friend bool operator==(const GeneratorDescriptor& a, const GeneratorDescriptor& b);
};

// Replays the pattern stream of a descriptor. Single owner; not shareable
// between threads while advancing.
class PatternStream {
 public:
  PatternStream(const GeneratorDescriptor& desc, int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t words_per_pattern() const noexcept { return words_; }

  Pattern next();
  // Writes the next pattern's packed words into `out` (size words_per_pattern()).
  void next_words(std::span<std::uint64_t> out);

 private:
  std::uint64_t next_msb_word(std::size_t bits);

  GeneratorDescriptor desc_;
  int width_;
  int height_;
  std::size_t pixels_;
  std::size_t words_;
  std::shared_ptr<const LeapTable> leap_;
  std::uint64_t lfsr_ = 0;
  std::uint64_t lcg_ = 0;
  std::mt19937 mt_;
};

// n consecutive patterns, packed, pattern-major.
struct PatternBank {
  int width = 0;
  int height = 0;
  std::size_t count = 0;
  std::size_t words_per_pattern = 0;
  std::vector<std::uint64_t> words;

  std::span<const std::uint64_t> pattern(std::size_t i) const {
    return std::span<const std::uint64_t>(words).subspan(i * words_per_pattern,
                                                         words_per_pattern);
  }
  bool bit(std::size_t i, std::size_t pixel) const {
    return (words[i * words_per_pattern + (pixel >> 6)] >> (pixel & 63)) & 1u;
  }
};

PatternBank generate_patterns(const GeneratorDescriptor& desc, int width, int height,
                              std::size_t count);

}  // namespace ghostimg

#endif  // GHOSTIMG_PATTERNS_HPP_
