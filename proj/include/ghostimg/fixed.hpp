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

#ifndef GHOSTIMG_FIXED_HPP_
#define GHOSTIMG_FIXED_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace ghostimg {

enum class Rounding {
  kNearestEven,
  kTruncate,  // toward negative infinity, i.e. an arithmetic right shift
};

enum class OverflowMode { kStrict, kSaturate };

// A (sign, integer bits, fraction bits) triple. The mantissa is held in a
// signed 64-bit word, so int_bits + frac_bits may not exceed 63.
struct FixedFormat {
  bool is_signed = false;
  int int_bits = 0;
  int frac_bits = 0;

  static constexpr int kMaxMantissaBits = 63;

  // Validating constructor; throws kFormatWidth.
  static FixedFormat make(bool is_signed, int int_bits, int frac_bits);
  static FixedFormat unsigned_(int int_bits, int frac_bits) {
    return make(false, int_bits, frac_bits);
  }
  static FixedFormat signed_(int int_bits, int frac_bits) {
    return make(true, int_bits, frac_bits);
  }

  int mantissa_bits() const noexcept { return int_bits + frac_bits; }
  int total_bits() const noexcept { return mantissa_bits() + (is_signed ? 1 : 0); }
  std::int64_t max_raw() const noexcept;
  std::int64_t min_raw() const noexcept;
  bool contains(std::int64_t raw) const noexcept {
    return raw >= min_raw() && raw <= max_raw();
  }
  // Value of one unit in the last place.
  double ulp() const noexcept;

  // "u,12,14" / "s,23,28".
  std::string to_string() const;
  static FixedFormat parse(std::string_view text);

  friend bool operator==(const FixedFormat&, const FixedFormat&) = default;
};

class FixedValue {
 public:
  FixedValue() = default;

  // Throws kOverflow if raw is outside the format's range.
  static FixedValue from_raw(std::int64_t raw, FixedFormat format);

  std::int64_t raw() const noexcept { return raw_; }
  const FixedFormat& format() const noexcept { return format_; }
  double to_double() const noexcept;

  friend bool operator==(const FixedValue&, const FixedValue&) = default;

 private:
  FixedValue(std::int64_t raw, FixedFormat format) : raw_(raw), format_(format) {}

  std::int64_t raw_ = 0;
  FixedFormat format_;
};

FixedValue fixed_from_real(double v, FixedFormat format,
                           Rounding rounding = Rounding::kNearestEven,
                           OverflowMode overflow = OverflowMode::kStrict);

// Exact widening product: integer and fraction widths add; the result is
// signed if either operand is. When both operands are signed one extra
// integer bit is added so that min * min stays representable.
FixedValue fixed_mul(const FixedValue& a, const FixedValue& b);

// Exact difference of two same-format values, widened to a signed format
// with one more integer bit. Throws kFormatMismatch on differing formats.
FixedValue fixed_sub(const FixedValue& a, const FixedValue& b);

// Re-quantizes into another format (fraction shift + range check).
FixedValue fixed_convert(const FixedValue& v, FixedFormat target,
                         Rounding rounding = Rounding::kTruncate,
                         OverflowMode overflow = OverflowMode::kStrict);

// Exact division by 2^shift: the mantissa is unchanged and the binary point
// moves left.
FixedValue fixed_div_pow2(const FixedValue& v, int shift);

// Smallest format that holds every value of both a and b exactly.
FixedFormat common_format(FixedFormat a, FixedFormat b);

}  // namespace ghostimg

#endif  // GHOSTIMG_FIXED_HPP_
