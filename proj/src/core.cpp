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

#include "ghostimg/core.hpp"

#include <bit>
#include <string>

namespace ghostimg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kFormatWidth: return "format-width";
    case ErrorCode::kFormatMismatch: return "format-mismatch";
    case ErrorCode::kZeroState: return "zero-state";
    case ErrorCode::kReplay: return "replay";
    case ErrorCode::kZeroMeanR: return "zero-mean-r";
    case ErrorCode::kNonPowerOfTwo: return "non-power-of-two";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kVersion: return "version";
    case ErrorCode::kCountMismatch: return "count-mismatch";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::kFloatGi: return "gi";
    case Engine::kFloatDgi: return "dgi-float";
    case Engine::kFixedDgi: return "dgi-fixed";
  }
  return "unknown";
}

void check_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kDimension,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

ObjectImage::ObjectImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimension, "object data length does not match " +
                                           std::to_string(width) + "x" +
                                           std::to_string(height));
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kPrecondition,
                  "transmittance outside [0, 1]: " + std::to_string(v));
    }
  }
}

ObjectImage ObjectImage::constant(int width, int height, double value) {
  check_dimensions(width, height);
  return ObjectImage(width, height,
                     std::vector<double>(static_cast<std::size_t>(width) * height, value));
}

namespace {
std::size_t word_count(int width, int height) {
  return (static_cast<std::size_t>(width) * height + 63) / 64;
}
}  // namespace

Pattern::Pattern(int width, int height)
    : width_(width), height_(height), words_() {
  check_dimensions(width, height);
  words_.assign(word_count(width, height), 0);
}

Pattern::Pattern(int width, int height, std::vector<std::uint64_t> words)
    : width_(width), height_(height), words_(std::move(words)) {
  check_dimensions(width, height);
  if (words_.size() != word_count(width, height)) {
    throw Error(ErrorCode::kDimension, "pattern word count does not match dimensions");
  }
  const std::size_t tail = size() % 64;
  if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

Pattern Pattern::from_bits(int width, int height, std::span<const std::uint8_t> bits) {
  Pattern p(width, height);
  if (bits.size() != p.size()) {
    throw Error(ErrorCode::kDimension, "pattern bit count does not match dimensions");
  }
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw Error(ErrorCode::kPrecondition, "pattern bits must be 0 or 1");
    p.set(i, bits[i] != 0);
  }
  return p;
}

Pattern Pattern::filled(int width, int height, bool on) {
  Pattern p(width, height);
  if (on) {
    for (std::size_t i = 0; i < p.size(); ++i) p.set(i, true);
  }
  return p;
}

void Pattern::set(std::size_t pixel, bool on) {
  const std::uint64_t mask = std::uint64_t{1} << (pixel & 63);
  if (on) {
    words_[pixel >> 6] |= mask;
  } else {
    words_[pixel >> 6] &= ~mask;
  }
}

std::vector<std::uint8_t> Pattern::bits() const {
  std::vector<std::uint8_t> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i) ? 1 : 0;
  return out;
}

std::size_t Pattern::popcount() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<double> DisplayImage::as_doubles() const {
  return std::vector<double>(data.begin(), data.end());
}

}  // namespace ghostimg
