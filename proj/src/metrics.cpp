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

#include <cmath>
#include <string>
#include <vector>

namespace ghostimg {
namespace {

void check_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimension, "images differ in size: " + std::to_string(a.size()) +
                                           " vs " + std::to_string(b.size()));
  }
  if (a.empty()) throw Error(ErrorCode::kDimension, "images are empty");
}

// Summed-area table with a zero border: (w + 1) x (h + 1).
class Integral {
 public:
  Integral(int width, int height) : stride_(static_cast<std::size_t>(width) + 1),
      sum_(stride_ * (static_cast<std::size_t>(height) + 1), 0.0) {}

  template <typename F>
  void fill(int width, int height, F value) {
    for (int y = 0; y < height; ++y) {
      double row = 0.0;
      for (int x = 0; x < width; ++x) {
        row += value(static_cast<std::size_t>(y) * width + x);
        at(x + 1, y + 1) = at(x + 1, y) + row;
      }
    }
  }

  double box(int x, int y, int size) const {
    return at(x + size, y + size) - at(x, y + size) - at(x + size, y) + at(x, y);
  }

 private:
  double& at(int x, int y) { return sum_[static_cast<std::size_t>(y) * stride_ + x]; }
  double at(int x, int y) const { return sum_[static_cast<std::size_t>(y) * stride_ + x]; }

  std::size_t stride_;
  std::vector<double> sum_;
};

}  // namespace

double mean_squared_error(std::span<const double> a, std::span<const double> b) {
  check_same_size(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double psnr(std::span<const double> a, std::span<const double> b, double peak) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(std::span<const double> a, std::span<const double> b, int width, int height,
            double peak, int window) {
  check_same_size(a, b);
  if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) != a.size()) {
    throw Error(ErrorCode::kDimension, "image size does not match width x height");
  }
  if (window < 1 || width < window || height < window) {
    throw Error(ErrorCode::kDimension, "SSIM needs images of at least " +
                                           std::to_string(window) + "x" +
                                           std::to_string(window));
  }
  Integral sa(width, height), sb(width, height), saa(width, height), sbb(width, height),
      sab(width, height);
  sa.fill(width, height, [&](std::size_t i) { return a[i]; });
  sb.fill(width, height, [&](std::size_t i) { return b[i]; });
  saa.fill(width, height, [&](std::size_t i) { return a[i] * a[i]; });
  sbb.fill(width, height, [&](std::size_t i) { return b[i] * b[i]; });
  sab.fill(width, height, [&](std::size_t i) { return a[i] * b[i]; });

  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);
  const double count = static_cast<double>(window) * window;
  double total = 0.0;
  std::size_t windows = 0;
  for (int y = 0; y + window <= height; ++y) {
    for (int x = 0; x + window <= width; ++x) {
      const double mu_a = sa.box(x, y, window) / count;
      const double mu_b = sb.box(x, y, window) / count;
      const double var_a = saa.box(x, y, window) / count - mu_a * mu_a;
      const double var_b = sbb.box(x, y, window) / count - mu_b * mu_b;
      const double cov = sab.box(x, y, window) / count - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
               ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

QualityReport evaluate(const ObjectImage& truth, const DisplayImage& reconstruction) {
  if (truth.width() != reconstruction.width || truth.height() != reconstruction.height) {
    throw Error(ErrorCode::kDimension, "truth and reconstruction differ in dimensions");
  }
  const double peak = static_cast<double>(reconstruction.max_value());
  std::vector<double> reference(truth.size());
  for (std::size_t i = 0; i < reference.size(); ++i) reference[i] = truth.data()[i] * peak;
  const std::vector<double> recon = reconstruction.as_doubles();
  return QualityReport{psnr(reference, recon, peak),
                       ssim(reference, recon, truth.width(), truth.height(), peak),
                       reconstruction.bits};
}

}  // namespace ghostimg
