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

#ifndef GHOSTIMG_CORE_HPP_
#define GHOSTIMG_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghostimg {

// Every failure raised by the library carries one of these codes. The CLI
// prints the code name as a stable, machine-parsable prefix.
enum class ErrorCode {
  kDimension,
  kPrecondition,
  kOverflow,
  kFormatWidth,
  kFormatMismatch,
  kZeroState,
  kReplay,
  kZeroMeanR,
  kNonPowerOfTwo,
  kParse,
  kVersion,
  kCountMismatch,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Object transmittance T(x, y), row-major, each value in [0, 1].
class ObjectImage {
 public:
  ObjectImage() = default;
  ObjectImage(int width, int height, std::vector<double> data);

  static ObjectImage constant(int width, int height, double value);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  double at(int x, int y) const { return data_[index(x, y)]; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const ObjectImage&, const ObjectImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// One binary illumination pattern. Bits are packed row-major into 64-bit
// words: pixel k lives in word k / 64 at bit position k % 64. Bits past the
// last pixel are always zero.
class Pattern {
 public:
  Pattern() = default;
  Pattern(int width, int height);
  Pattern(int width, int height, std::vector<std::uint64_t> words);

  static Pattern from_bits(int width, int height,
                           std::span<const std::uint8_t> bits);
  static Pattern filled(int width, int height, bool on);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool at(std::size_t pixel) const {
    return (words_[pixel >> 6] >> (pixel & 63)) & 1u;
  }
  bool at(int x, int y) const {
    return at(static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
              static_cast<std::size_t>(x));
  }
  void set(std::size_t pixel, bool on);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::vector<std::uint8_t> bits() const;
  std::size_t popcount() const noexcept;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class Engine { kFloatGi, kFloatDgi, kFixedDgi };

std::string_view engine_name(Engine engine);

// Reconstruction on an arbitrary signed scale; see normalize_for_display.
struct ReconstructedImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;
  Engine provenance = Engine::kFloatDgi;
};

// Integer image in [0, 2^bits - 1], the form used for metrics and PGM output.
struct DisplayImage {
  int width = 0;
  int height = 0;
  int bits = 8;
  std::vector<std::uint16_t> data;

  std::uint32_t max_value() const noexcept { return (1u << bits) - 1u; }
  std::vector<double> as_doubles() const;

  friend bool operator==(const DisplayImage&, const DisplayImage&) = default;
};

// Throws kDimension unless width and height are positive.
void check_dimensions(int width, int height);

}  // namespace ghostimg

#endif  // GHOSTIMG_CORE_HPP_
