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

#include "ghostimg/patterns.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <mutex>

namespace ghostimg {
namespace {

// Column-major 64x64 matrix over GF(2): cols[j] is the image of basis bit j.
using Gf2Matrix = std::array<std::uint64_t, 64>;

std::uint64_t apply(const Gf2Matrix& m, std::uint64_t v) {
  std::uint64_t out = 0;
  while (v != 0) {
    out ^= m[static_cast<std::size_t>(std::countr_zero(v))];
    v &= v - 1;
  }
  return out;
}

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
  Gf2Matrix c{};
  for (std::size_t j = 0; j < 64; ++j) c[j] = apply(a, b[j]);
  return c;
}

Gf2Matrix identity() {
  Gf2Matrix m{};
  for (std::size_t j = 0; j < 64; ++j) m[j] = std::uint64_t{1} << j;
  return m;
}

std::uint64_t step_state(std::uint64_t state, std::uint64_t taps) {
  const auto feedback = static_cast<std::uint64_t>(std::popcount(state & taps) & 1);
  return (state << 1) | feedback;
}

Gf2Matrix step_matrix(std::uint64_t taps) {
  Gf2Matrix m{};
  for (std::size_t j = 0; j < 64; ++j) m[j] = step_state(std::uint64_t{1} << j, taps);
  return m;
}

Gf2Matrix power(Gf2Matrix base, std::uint64_t exponent) {
  Gf2Matrix result = identity();
  while (exponent != 0) {
    if (exponent & 1) result = multiply(result, base);
    base = multiply(base, base);
    exponent >>= 1;
  }
  return result;
}

bool compute_maximal_length(std::uint64_t taps) {
  constexpr std::uint64_t kPeriod = ~std::uint64_t{0};  // 2^64 - 1
  constexpr std::array<std::uint64_t, 7> kPrimeFactors{3, 5, 17, 257, 641, 65537, 6700417};
  const Gf2Matrix step = step_matrix(taps);
  if (power(step, kPeriod) != identity()) return false;
  for (std::uint64_t q : kPrimeFactors) {
    if (power(step, kPeriod / q) == identity()) return false;
  }
  return true;
}

std::uint64_t reverse_bits(std::uint64_t v) {
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((v & 0x0F0F0F0F0F0F0F0FULL) << 4);
  v = ((v >> 8) & 0x00FF00FF00FF00FFULL) | ((v & 0x00FF00FF00FF00FFULL) << 8);
  v = ((v >> 16) & 0x0000FFFF0000FFFFULL) | ((v & 0x0000FFFF0000FFFFULL) << 16);
  return (v >> 32) | (v << 32);
}

void require_nonzero(std::uint64_t state) {
  if (state == 0) {
    throw Error(ErrorCode::kZeroState, "LFSR state is all zeros (absorbing state)");
  }
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kParse, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::uint64_t taps_to_mask(std::span<const int> taps) {
  std::uint64_t mask = 0;
  for (int t : taps) {
    if (t < 1 || t > 64) {
      throw Error(ErrorCode::kPrecondition, "tap index out of range 1..64: " + std::to_string(t));
    }
    mask |= std::uint64_t{1} << (t - 1);
  }
  return mask;
}

std::vector<int> mask_to_taps(std::uint64_t mask) {
  std::vector<int> taps;
  for (int t = 64; t >= 1; --t) {
    if ((mask >> (t - 1)) & 1) taps.push_back(t);
  }
  return taps;
}

std::uint64_t default_tap_mask() { return taps_to_mask(kDefaultTaps); }

bool is_maximal_length(std::uint64_t tap_mask) {
  static std::mutex mu;
  static std::map<std::uint64_t, bool> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(tap_mask); it != cache.end()) return it->second;
  }
  const bool result = compute_maximal_length(tap_mask);
  std::lock_guard lock(mu);
  cache.emplace(tap_mask, result);
  return result;
}

std::pair<LfsrState, int> lfsr_step(LfsrState s) {
  require_nonzero(s.state);
  const int bit = static_cast<int>(s.state >> 63);
  return {LfsrState{step_state(s.state, s.taps), s.taps}, bit};
}

LeapTable::LeapTable(std::uint64_t tap_mask) : taps_(tap_mask) {
  std::array<std::uint64_t, 64> columns{};
  for (std::size_t j = 0; j < 64; ++j) {
    std::uint64_t v = std::uint64_t{1} << j;
    for (int k = 0; k < 64; ++k) v = step_state(v, tap_mask);
    columns[j] = v;
  }
  for (std::size_t b = 0; b < 8; ++b) {
    for (std::size_t byte = 0; byte < 256; ++byte) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < 8; ++k) {
        if ((byte >> k) & 1) acc ^= columns[8 * b + k];
      }
      table_[b][byte] = acc;
    }
  }
}

std::shared_ptr<const LeapTable> leap_table_for(std::uint64_t tap_mask) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const LeapTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[tap_mask];
  if (!slot) slot = std::make_shared<const LeapTable>(tap_mask);
  return slot;
}

std::pair<LfsrState, std::uint64_t> lfsr_leap64(LfsrState s) {
  require_nonzero(s.state);
  // Within 64 clocks no feedback bit reaches M(64), so the emitted word is the
  // current register read from M(64) down to M(1).
  const std::uint64_t word = reverse_bits(s.state);
  return {LfsrState{leap_table_for(s.taps)->advance(s.state), s.taps}, word};
}

std::string_view generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kMSequence: return "mseq";
    case GeneratorKind::kLcg: return "lcg";
    case GeneratorKind::kMersenneTwister: return "mt";
  }
  return "unknown";
}

GeneratorDescriptor GeneratorDescriptor::mseq(std::uint64_t seed) {
  GeneratorDescriptor d;
  d.kind = GeneratorKind::kMSequence;
  d.seed = seed;
  return d;
}

GeneratorDescriptor GeneratorDescriptor::lcg(std::uint64_t seed) {
  GeneratorDescriptor d;
  d.kind = GeneratorKind::kLcg;
  d.seed = seed;
  return d;
}

GeneratorDescriptor GeneratorDescriptor::mt(std::uint64_t seed) {
  GeneratorDescriptor d;
  d.kind = GeneratorKind::kMersenneTwister;
  d.seed = seed;
  return d;
}

void GeneratorDescriptor::validate() const {
  if (kind == GeneratorKind::kMersenneTwister && seed > 0xffffffffULL) {
    throw Error(ErrorCode::kPrecondition, "mt seeds are 32-bit");
  }
  if (kind != GeneratorKind::kMSequence) return;
  if (seed == 0) {
    throw Error(ErrorCode::kZeroState, "M-sequence seed must be nonzero");
  }
  if (!is_maximal_length(taps)) {
    std::string list;
    for (int t : mask_to_taps(taps)) list += (list.empty() ? "" : ",") + std::to_string(t);
    throw Error(ErrorCode::kPrecondition, "tap set {" + list + "} is not maximal-length");
  }
}

std::string GeneratorDescriptor::to_string() const {
  std::string out = std::string(generator_kind_name(kind)) + ":" + std::to_string(seed);
  switch (kind) {
    case GeneratorKind::kMSequence: {
      out += ":";
      bool first = true;
      for (int t : mask_to_taps(taps)) {
        out += (first ? "" : ",") + std::to_string(t);
        first = false;
      }
      break;
    }
    case GeneratorKind::kLcg:
      out += ":" + std::to_string(lcg_multiplier) + "," + std::to_string(lcg_increment);
      break;
    case GeneratorKind::kMersenneTwister:
      break;
  }
  return out;
}

GeneratorDescriptor GeneratorDescriptor::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw Error(ErrorCode::kParse, "generator descriptor must be kind:seed[:params], got '" +
                                       std::string(text) + "'");
  }
  GeneratorDescriptor d;
  if (parts[0] == "mseq") {
    d.kind = GeneratorKind::kMSequence;
  } else if (parts[0] == "lcg") {
    d.kind = GeneratorKind::kLcg;
  } else if (parts[0] == "mt") {
    d.kind = GeneratorKind::kMersenneTwister;
  } else {
    throw Error(ErrorCode::kParse, "unknown generator kind '" + std::string(parts[0]) + "'");
  }
  d.seed = parse_u64(parts[1], "seed");
  if (parts.size() == 3) {
    const auto params = split(parts[2], ',');
    switch (d.kind) {
      case GeneratorKind::kMSequence: {
        std::vector<int> taps;
        for (auto p : params) taps.push_back(static_cast<int>(parse_u64(p, "tap")));
        d.taps = taps_to_mask(taps);
        break;
      }
      case GeneratorKind::kLcg:
        if (params.size() != 2) {
          throw Error(ErrorCode::kParse, "lcg params must be multiplier,increment");
        }
        d.lcg_multiplier = parse_u64(params[0], "lcg multiplier");
        d.lcg_increment = parse_u64(params[1], "lcg increment");
        break;
      case GeneratorKind::kMersenneTwister:
        throw Error(ErrorCode::kParse, "mt takes no params");
    }
  }
  d.validate();
  return d;
}

bool operator==(const GeneratorDescriptor& a, const GeneratorDescriptor& b) {
  if (a.kind != b.kind || a.seed != b.seed) return false;
  switch (a.kind) {
    case GeneratorKind::kMSequence: return a.taps == b.taps;
    case GeneratorKind::kLcg:
      return a.lcg_multiplier == b.lcg_multiplier && a.lcg_increment == b.lcg_increment;
    case GeneratorKind::kMersenneTwister: return true;
  }
  return false;
}

PatternStream::PatternStream(const GeneratorDescriptor& desc, int width, int height)
    : desc_(desc),
      width_(width),
      height_(height),
      pixels_(0),
      words_(0),
      mt_(static_cast<std::uint32_t>(desc.seed)) {
  check_dimensions(width, height);
  desc_.validate();
  pixels_ = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  words_ = (pixels_ + 63) / 64;
  switch (desc_.kind) {
    case GeneratorKind::kMSequence:
      if (pixels_ % 64 != 0) {
        throw Error(ErrorCode::kDimension,
                    "M-sequence patterns need width*height divisible by 64, got " +
                        std::to_string(width) + "x" + std::to_string(height));
      }
      leap_ = leap_table_for(desc_.taps);
      lfsr_ = desc_.seed;
      break;
    case GeneratorKind::kLcg:
      lcg_ = desc_.seed;
      break;
    case GeneratorKind::kMersenneTwister:
      break;
  }
}

std::uint64_t PatternStream::next_msb_word(std::size_t bits) {
  std::uint64_t word = 0;
  if (desc_.kind == GeneratorKind::kLcg) {
    for (std::size_t k = 0; k < bits; ++k) {
      lcg_ = desc_.lcg_multiplier * lcg_ + desc_.lcg_increment;
      word |= (lcg_ >> 63) << k;
    }
  } else {
    for (std::size_t k = 0; k < bits; ++k) {
      word |= static_cast<std::uint64_t>(mt_() >> 31) << k;
    }
  }
  return word;
}

void PatternStream::next_words(std::span<std::uint64_t> out) {
  if (out.size() != words_) {
    throw Error(ErrorCode::kDimension, "pattern buffer has the wrong word count");
  }
  if (desc_.kind == GeneratorKind::kMSequence) {
    for (auto& w : out) {
      w = reverse_bits(lfsr_);
      lfsr_ = leap_->advance(lfsr_);
    }
    return;
  }
  for (std::size_t k = 0; k < words_; ++k) {
    const std::size_t bits = std::min<std::size_t>(64, pixels_ - 64 * k);
    out[k] = next_msb_word(bits);
  }
}

Pattern PatternStream::next() {
  std::vector<std::uint64_t> words(words_);
  next_words(words);
  return Pattern(width_, height_, std::move(words));
}

PatternBank generate_patterns(const GeneratorDescriptor& desc, int width, int height,
                              std::size_t count) {
  PatternStream stream(desc, width, height);
  PatternBank bank;
  bank.width = width;
  bank.height = height;
  bank.count = count;
  bank.words_per_pattern = stream.words_per_pattern();
  bank.words.resize(count * bank.words_per_pattern);
  for (std::size_t i = 0; i < count; ++i) {
    stream.next_words(std::span<std::uint64_t>(bank.words)
                          .subspan(i * bank.words_per_pattern, bank.words_per_pattern));
  }
  return bank;
}

}  // namespace ghostimg
