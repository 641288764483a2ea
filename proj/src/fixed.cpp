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

#include "ghostimg/fixed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ghostimg/core.hpp"

namespace ghostimg {
namespace {

__extension__ typedef __int128 Wide;

Error overflow_error(Wide raw, FixedFormat format) {
  return Error(ErrorCode::kOverflow,
               "value " + std::to_string(static_cast<long double>(raw) /
                                         std::ldexp(1.0L, format.frac_bits)) +
                   " does not fit fixed format (" + format.to_string() + ")");
}

// Range check in the wide domain, then narrow.
std::int64_t fit(Wide raw, FixedFormat format, OverflowMode overflow) {
  const Wide hi = format.max_raw();
  const Wide lo = format.min_raw();
  if (raw > hi || raw < lo) {
    if (overflow == OverflowMode::kStrict) throw overflow_error(raw, format);
    raw = std::clamp(raw, lo, hi);
  }
  return static_cast<std::int64_t>(raw);
}

Wide shift_right(Wide raw, int shift, Rounding rounding) {
  if (shift <= 0) return raw;
  if (shift >= 126) return raw < 0 ? -1 : 0;
  const Wide floor = raw >> shift;  // arithmetic shift: floor division
  if (rounding == Rounding::kTruncate) return floor;
  const Wide rem = raw - (floor << shift);
  const Wide half = Wide{1} << (shift - 1);
  if (rem > half || (rem == half && (floor & 1) != 0)) return floor + 1;
  return floor;
}

}  // namespace

FixedFormat FixedFormat::make(bool is_signed, int int_bits, int frac_bits) {
  if (int_bits < 0 || frac_bits < 0 || int_bits + frac_bits > kMaxMantissaBits) {
    throw Error(ErrorCode::kFormatWidth,
                "invalid fixed format (" + std::string(is_signed ? "s" : "u") +
                    "," + std::to_string(int_bits) + "," +
                    std::to_string(frac_bits) + "): mantissa limited to 63 bits");
  }
  return FixedFormat{is_signed, int_bits, frac_bits};
}

std::int64_t FixedFormat::max_raw() const noexcept {
  return static_cast<std::int64_t>((std::uint64_t{1} << mantissa_bits()) - 1);
}

std::int64_t FixedFormat::min_raw() const noexcept {
  return is_signed ? -(static_cast<std::int64_t>(std::uint64_t{1} << mantissa_bits()) - 1) - 1
                   : 0;
}

double FixedFormat::ulp() const noexcept { return std::ldexp(1.0, -frac_bits); }

std::string FixedFormat::to_string() const {
  return std::string(is_signed ? "s" : "u") + "," + std::to_string(int_bits) + "," +
         std::to_string(frac_bits);
}

FixedFormat FixedFormat::parse(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::kParse, "bad fixed format '" + std::string(text) +
                                        "', expected e.g. u,12,14");
  };
  if (text.size() < 5 || (text[0] != 'u' && text[0] != 's') || text[1] != ',') throw fail();
  const char* p = text.data() + 2;
  const char* end = text.data() + text.size();
  int ib = 0;
  int fb = 0;
  auto r1 = std::from_chars(p, end, ib);
  if (r1.ec != std::errc() || r1.ptr == end || *r1.ptr != ',') throw fail();
  auto r2 = std::from_chars(r1.ptr + 1, end, fb);
  if (r2.ec != std::errc() || r2.ptr != end) throw fail();
  return make(text[0] == 's', ib, fb);
}

FixedValue FixedValue::from_raw(std::int64_t raw, FixedFormat format) {
  if (!format.contains(raw)) throw overflow_error(raw, format);
  return FixedValue(raw, format);
}

double FixedValue::to_double() const noexcept {
  return std::ldexp(static_cast<double>(raw_), -format_.frac_bits);
}

FixedValue fixed_from_real(double v, FixedFormat format, Rounding rounding,
                           OverflowMode overflow) {
  if (std::isnan(v)) {
    throw Error(ErrorCode::kOverflow, "NaN cannot be quantized");
  }
  const double scaled = std::ldexp(v, format.frac_bits);
  const double rounded =
      rounding == Rounding::kTruncate ? std::floor(scaled) : std::nearbyint(scaled);
  const double limit = std::ldexp(1.0, format.mantissa_bits());
  const bool too_big = rounded >= limit;
  const bool too_small = format.is_signed ? rounded < -limit : rounded < 0.0;
  if (too_big || too_small) {
    if (overflow == OverflowMode::kStrict) {
      throw Error(ErrorCode::kOverflow, "value " + std::to_string(v) +
                                            " does not fit fixed format (" +
                                            format.to_string() + ")");
    }
    return FixedValue::from_raw(too_big ? format.max_raw() : format.min_raw(), format);
  }
  return FixedValue::from_raw(static_cast<std::int64_t>(rounded), format);
}

FixedValue fixed_mul(const FixedValue& a, const FixedValue& b) {
  const FixedFormat& fa = a.format();
  const FixedFormat& fb = b.format();
  const bool both_signed = fa.is_signed && fb.is_signed;
  const FixedFormat out =
      FixedFormat::make(fa.is_signed || fb.is_signed,
                        fa.int_bits + fb.int_bits + (both_signed ? 1 : 0),
                        fa.frac_bits + fb.frac_bits);
  const Wide product = Wide{a.raw()} * Wide{b.raw()};
  return FixedValue::from_raw(fit(product, out, OverflowMode::kStrict), out);
}

FixedValue fixed_sub(const FixedValue& a, const FixedValue& b) {
  if (!(a.format() == b.format())) {
    throw Error(ErrorCode::kFormatMismatch,
                "subtraction operands differ in format: (" + a.format().to_string() +
                    ") vs (" + b.format().to_string() + ")");
  }
  const FixedFormat out =
      FixedFormat::make(true, a.format().int_bits + 1, a.format().frac_bits);
  const Wide diff = Wide{a.raw()} - Wide{b.raw()};
  return FixedValue::from_raw(fit(diff, out, OverflowMode::kStrict), out);
}

FixedValue fixed_convert(const FixedValue& v, FixedFormat target, Rounding rounding,
                         OverflowMode overflow) {
  const int delta = target.frac_bits - v.format().frac_bits;
  Wide raw = v.raw();
  if (delta > 0) {
    raw <<= delta;  // |raw| < 2^63 and delta <= 63, fits 127 bits
  } else if (delta < 0) {
    raw = shift_right(raw, -delta, rounding);
  }
  return FixedValue::from_raw(fit(raw, target, overflow), target);
}

FixedValue fixed_div_pow2(const FixedValue& v, int shift) {
  if (shift < 0) throw Error(ErrorCode::kPrecondition, "negative shift");
  const FixedFormat& f = v.format();
  const int int_bits = std::max(f.int_bits - shift, 0);
  const FixedFormat out = FixedFormat::make(f.is_signed, int_bits, f.frac_bits + shift);
  return FixedValue::from_raw(v.raw(), out);
}

FixedFormat common_format(FixedFormat a, FixedFormat b) {
  return FixedFormat::make(a.is_signed || b.is_signed, std::max(a.int_bits, b.int_bits),
                           std::max(a.frac_bits, b.frac_bits));
}

}  // namespace ghostimg
