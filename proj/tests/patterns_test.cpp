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

#include <bit>
#include <random>
#include <string>
#include <unordered_set>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace ghostimg {
namespace {

const std::vector<int> kTaps(kDefaultTaps.begin(), kDefaultTaps.end());

std::string golden_path() { return std::string(GHOSTIMG_TEST_DATA_DIR) + "/lfsr_golden.txt"; }

LfsrState state(std::uint64_t s) { return LfsrState{s, default_tap_mask()}; }

TEST(LfsrTest, DefaultTapsAreMaximalLength) {
  EXPECT_TRUE(is_maximal_length(default_tap_mask()));
  const std::vector<int> reducible{64};  // x^64 + 1
  EXPECT_FALSE(is_maximal_length(taps_to_mask(reducible)));
  const std::vector<int> short_taps{64, 63};
  EXPECT_FALSE(is_maximal_length(taps_to_mask(short_taps)));
}

TEST(LfsrTest, StepFromBitOne) {
  const auto [next, bit] = lfsr_step(state(1));
  EXPECT_EQ(bit, 0);  // previous M(64)
  EXPECT_EQ(next.state, 2u);  // shifted, feedback 0 inserted at M(1)

  const auto [next64, bit64] = lfsr_step(state(std::uint64_t{1} << 63));
  EXPECT_EQ(bit64, 1);
  EXPECT_EQ(next64.state, 1u);  // M(64) is tapped, feedback 1
}

TEST(LfsrTest, ZeroStateRejected) {
  try {
    lfsr_step(state(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroState);
  }
  EXPECT_THROW(lfsr_leap64(state(0)), Error);
  EXPECT_THROW(GeneratorDescriptor::mseq(0).validate(), Error);
}

TEST(LfsrTest, GoldenVectorMatchesFlipFlopOracle) {
  const auto rows = oracle::load_golden(golden_path());
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& [seed, bits] : rows) {
    oracle::FlipFlopLfsr ff(seed, kTaps);
    LfsrState s = state(seed);
    for (std::size_t t = 0; t < bits.size(); ++t) {
      const int expected = bits[t] - '0';
      ASSERT_EQ(ff.clock(), expected) << "oracle disagrees with fixture at bit " << t;
      const auto [next, bit] = lfsr_step(s);
      ASSERT_EQ(bit, expected) << "seed " << seed << " bit " << t;
      s = next;
      ASSERT_EQ(s.state, ff.state());
    }
  }
}

TEST(LfsrTest, LeapPacksGoldenBits) {
  for (const auto& [seed, bits] : oracle::load_golden(golden_path())) {
    LfsrState s = state(seed);
    for (std::size_t word = 0; word < bits.size() / 64; ++word) {
      const auto [next, w] = lfsr_leap64(s);
      for (int j = 0; j < 64; ++j) {
        EXPECT_EQ(static_cast<int>((w >> j) & 1), bits[64 * word + j] - '0');
      }
      s = next;
    }
  }
}

TEST(LfsrTest, LeapEqualsSixtyFourSteps) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 10000; ++trial) {
    std::uint64_t seed = rng();
    if (seed == 0) seed = 1;
    LfsrState s = state(seed);
    std::uint64_t word = 0;
    for (int j = 0; j < 64; ++j) {
      const auto [next, bit] = lfsr_step(s);
      word |= static_cast<std::uint64_t>(bit) << j;
      s = next;
    }
    const auto [leaped, leap_word] = lfsr_leap64(state(seed));
    ASSERT_EQ(leap_word, word);
    ASSERT_EQ(leaped, s);
  }
}

TEST(LfsrTest, TwoLeapsEqual128Steps) {
  LfsrState s = state(0xdeadbeefcafef00dULL);
  LfsrState stepped = s;
  for (int j = 0; j < 128; ++j) stepped = lfsr_step(stepped).first;
  EXPECT_EQ(lfsr_leap64(lfsr_leap64(s).first).first, stepped);
}

TEST(LfsrTest, LeapWorksForOtherTapSets) {
  // x^64 + x^4 + x^3 + x + 1 is primitive as well.
  const std::vector<int> taps{64, 4, 3, 1};
  const std::uint64_t mask = taps_to_mask(taps);
  ASSERT_TRUE(is_maximal_length(mask));
  LfsrState s{0x123456789ULL, mask};
  LfsrState stepped = s;
  for (int j = 0; j < 64; ++j) stepped = lfsr_step(stepped).first;
  EXPECT_EQ(lfsr_leap64(s).first, stepped);
}

TEST(LfsrTest, NoShortCycleFromSeedOne) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1u << 21);
  LfsrState s = state(1);
  for (int k = 0; k < (1 << 20); ++k) {
    ASSERT_NE(s.state, 0u);
    ASSERT_TRUE(seen.insert(s.state).second) << "repeat after " << k << " steps";
    s = lfsr_step(s).first;
  }
}

TEST(GeneratorDescriptorTest, CanonicalText) {
  EXPECT_EQ(GeneratorDescriptor::mseq(1).to_string(), "mseq:1:64,63,61,60");
  EXPECT_EQ(GeneratorDescriptor::lcg(7).to_string(),
            "lcg:7:6364136223846793005,1442695040888963407");
  EXPECT_EQ(GeneratorDescriptor::mt(5489).to_string(), "mt:5489");
  for (const char* text : {"mseq:1:64,63,61,60", "lcg:7:6364136223846793005,1442695040888963407",
                           "mt:5489", "mseq:99:64,4,3,1"}) {
    EXPECT_EQ(GeneratorDescriptor::parse(text).to_string(), text);
  }
  EXPECT_EQ(GeneratorDescriptor::parse("mseq:0x10"), GeneratorDescriptor::mseq(16));
}

TEST(GeneratorDescriptorTest, RejectsBadText) {
  EXPECT_THROW(GeneratorDescriptor::parse("mseq"), Error);
  EXPECT_THROW(GeneratorDescriptor::parse("xorshift:1"), Error);
  EXPECT_THROW(GeneratorDescriptor::parse("mseq:abc"), Error);
  EXPECT_THROW(GeneratorDescriptor::parse("lcg:1:5"), Error);
  EXPECT_THROW(GeneratorDescriptor::parse("mt:1:2"), Error);
  EXPECT_THROW(GeneratorDescriptor::parse("mt:4294967296"), Error);
  EXPECT_THROW(GeneratorDescriptor::parse("mseq:1:64,63"), Error);
  try {
    GeneratorDescriptor::parse("mseq:0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroState);
  }
}

TEST(PatternStreamTest, EachLeapFillsTwoRows) {
  PatternStream stream(GeneratorDescriptor::mseq(1), 32, 32);
  const Pattern p = stream.next();
  LfsrState s = state(1);
  for (int leap = 0; leap < 16; ++leap) {
    const auto [next, word] = lfsr_leap64(s);
    s = next;
    for (int j = 0; j < 64; ++j) {
      const int x = j % 32;
      const int y = 2 * leap + j / 32;
      EXPECT_EQ(p.at(x, y), ((word >> j) & 1) != 0);
    }
  }
  // The stream continues where the sixteenth leap stopped.
  const Pattern q = stream.next();
  EXPECT_EQ(q.words()[0], lfsr_leap64(s).second);
}

TEST(PatternStreamTest, Deterministic) {
  for (const auto& g : {GeneratorDescriptor::mseq(3), GeneratorDescriptor::lcg(3),
                        GeneratorDescriptor::mt(3)}) {
    PatternStream a(g, 32, 32);
    PatternStream b(g, 32, 32);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(a.next(), b.next());
  }
}

TEST(PatternStreamTest, MSequenceNeedsMultipleOf64) {
  try {
    PatternStream(GeneratorDescriptor::mseq(1), 30, 30);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimension);
  }
  EXPECT_NO_THROW(PatternStream(GeneratorDescriptor::lcg(1), 30, 30));
}

TEST(PatternStreamTest, LcgTakesTopBitOfEachState) {
  PatternStream stream(GeneratorDescriptor::lcg(42), 10, 7);
  const Pattern p = stream.next();
  std::uint64_t x = 42;
  for (std::size_t pixel = 0; pixel < 70; ++pixel) {
    x = kLcgMultiplier * x + kLcgIncrement;
    EXPECT_EQ(p.at(pixel), (x >> 63) != 0);
  }
}

TEST(PatternStreamTest, MtTakesTopBitOfEachWord) {
  PatternStream stream(GeneratorDescriptor::mt(5489), 32, 32);
  const Pattern p = stream.next();
  std::mt19937 ref(5489);
  for (std::size_t pixel = 0; pixel < 1024; ++pixel) {
    EXPECT_EQ(p.at(pixel), (ref() >> 31) != 0);
  }
}

TEST(PatternStreamTest, FillRatioNearHalf) {
  PatternStream stream(GeneratorDescriptor::mseq(1), 32, 32);
  double ones = 0.0;
  for (int i = 0; i < 1000; ++i) ones += static_cast<double>(stream.next().popcount());
  EXPECT_NEAR(ones / (1000.0 * 1024.0), 0.5, 0.02);
}

TEST(PatternStreamTest, BalancedOverFullMeasurement) {
  const PatternBank bank = generate_patterns(GeneratorDescriptor::mseq(1), 32, 32, 16384);
  std::size_t ones = 0;
  for (std::uint64_t w : bank.words) ones += static_cast<std::size_t>(std::popcount(w));
  const double fraction = static_cast<double>(ones) / (16384.0 * 1024.0);
  EXPECT_GE(fraction, 0.49);
  EXPECT_LE(fraction, 0.51);
}

TEST(PatternBankTest, MatchesStream) {
  const auto g = GeneratorDescriptor::lcg(9);
  const PatternBank bank = generate_patterns(g, 16, 8, 20);
  PatternStream stream(g, 16, 8);
  for (std::size_t i = 0; i < 20; ++i) {
    const Pattern p = stream.next();
    for (std::size_t px = 0; px < p.size(); ++px) EXPECT_EQ(bank.bit(i, px), p.at(px));
  }
}

TEST(PatternTest, BitsRoundTrip) {
  std::vector<std::uint8_t> bits(7 * 5);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (i * 7 + 3) % 3 == 0;
  const Pattern p = Pattern::from_bits(7, 5, bits);
  EXPECT_EQ(p.bits(), bits);
  const std::vector<std::uint8_t> bad{0, 2};
  EXPECT_THROW(Pattern::from_bits(2, 1, bad), Error);
  EXPECT_THROW(Pattern::from_bits(3, 1, bad), Error);
}

}  // namespace
}  // namespace ghostimg
