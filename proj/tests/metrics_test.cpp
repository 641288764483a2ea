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

#include "ghostimg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace ghostimg {
namespace {

std::vector<double> random_image(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, 255);
  std::vector<double> v(size);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<double> checkerboard(int w, int h, int cell) {
  std::vector<double> v(static_cast<std::size_t>(w * h));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) v[y * w + x] = ((x / cell + y / cell) % 2) ? 255.0 : 0.0;
  return v;
}

TEST(PsnrTest, Examples) {
  const auto a = random_image(1024, 1);
  EXPECT_EQ(psnr(a, a), kPsnrIdentical);
  EXPECT_DOUBLE_EQ(psnr(std::vector<double>(64, 0.0), std::vector<double>(64, 255.0)), 0.0);
}

TEST(PsnrTest, SinglePixelOffBySixteen) {
  std::vector<double> a(1024, 100.0);
  std::vector<double> b = a;
  b[517] += 16.0;
  // 10 log10(255^2 / (256 / 1024))
  EXPECT_NEAR(psnr(a, b), 54.1514, 0.01);
}

TEST(PsnrTest, DecreasesWithNestedPerturbations) {
  const auto a = random_image(1024, 2);
  auto b = a;
  double last = kPsnrIdentical;
  std::mt19937 rng(3);
  for (int k = 0; k < 50; ++k) {
    const std::size_t i = rng() % b.size();
    b[i] = b[i] < 128 ? b[i] + 60 : b[i] - 60;
    const double now = psnr(a, b);
    EXPECT_LT(now, last);
    last = now;
  }
}

TEST(PsnrTest, InvariantUnderJointPermutation) {
  auto a = random_image(256, 4);
  auto b = random_image(256, 5);
  const double before = psnr(a, b);
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937(6));
  std::vector<double> pa(a.size());
  std::vector<double> pb(a.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    pa[i] = a[order[i]];
    pb[i] = b[order[i]];
  }
  EXPECT_NEAR(psnr(pa, pb), before, 1e-12);
}

TEST(PsnrTest, SizeMismatch) {
  EXPECT_THROW(psnr(std::vector<double>(4), std::vector<double>(5)), Error);
}

TEST(SsimTest, IdenticalIsOne) {
  const auto a = random_image(1024, 7);
  EXPECT_EQ(ssim(a, a, 32, 32), 1.0);
}

TEST(SsimTest, Symmetric) {
  const auto a = random_image(1024, 8);
  const auto b = random_image(1024, 9);
  EXPECT_DOUBLE_EQ(ssim(a, b, 32, 32), ssim(b, a, 32, 32));
}

TEST(SsimTest, MatchesDirectComputation) {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const auto a = random_image(32 * 24, seed);
    const auto b = random_image(32 * 24, seed + 100);
    EXPECT_NEAR(ssim(a, b, 32, 24), oracle::naive_ssim(a, b, 32, 24, 255.0, 8), 1e-9);
    EXPECT_NEAR(ssim(a, b, 32, 24, 255.0, 5), oracle::naive_ssim(a, b, 32, 24, 255.0, 5), 1e-9);
  }
}

TEST(SsimTest, InvertedCheckerboardIsNegative) {
  const auto a = checkerboard(32, 32, 4);
  std::vector<double> inv(a.size());
  std::transform(a.begin(), a.end(), inv.begin(), [](double v) { return 255.0 - v; });
  const double s = ssim(a, inv, 32, 32);
  EXPECT_LT(s, 0.0);
  EXPECT_NEAR(s, oracle::naive_ssim(a, inv, 32, 32, 255.0, 8), 1e-9);
}

TEST(SsimTest, BelowOneWhenDifferent) {
  const auto a = random_image(1024, 20);
  auto b = a;
  b[300] += 1.0;
  const double s = ssim(a, b, 32, 32);
  EXPECT_LT(s, 1.0);
  EXPECT_GE(s, -1.0);
}

TEST(SsimTest, Errors) {
  const std::vector<double> small(49, 1.0);
  EXPECT_THROW(ssim(small, small, 7, 7), Error);
  EXPECT_THROW(ssim(std::vector<double>(64), std::vector<double>(65), 8, 8), Error);
  EXPECT_THROW(ssim(std::vector<double>(64), std::vector<double>(64), 8, 9), Error);
}

TEST(EvaluateTest, ScalesTruthToDisplayPeak) {
  std::vector<double> t(64);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = (i % 3 == 0) ? 1.0 : 0.0;
  const ObjectImage truth(8, 8, t);
  DisplayImage d{8, 8, 8, std::vector<std::uint16_t>(64)};
  for (std::size_t i = 0; i < 64; ++i) d.data[i] = t[i] > 0 ? 255 : 0;
  const QualityReport r = evaluate(truth, d);
  EXPECT_EQ(r.psnr, kPsnrIdentical);
  EXPECT_EQ(r.ssim, 1.0);
  EXPECT_EQ(r.bits, 8);

  DisplayImage wide{8, 8, 12, std::vector<std::uint16_t>(64)};
  for (std::size_t i = 0; i < 64; ++i) wide.data[i] = t[i] > 0 ? 4095 : 0;
  EXPECT_EQ(evaluate(truth, wide).psnr, kPsnrIdentical);

  EXPECT_THROW(evaluate(ObjectImage::constant(4, 4, 0.0), d), Error);
}

}  // namespace
}  // namespace ghostimg
