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

#ifndef GHOSTIMG_METRICS_HPP_
#define GHOSTIMG_METRICS_HPP_

#include <limits>
#include <span>

#include "ghostimg/core.hpp"

namespace ghostimg {

// Returned by psnr() for identical images.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();
inline constexpr int kDefaultSsimWindow = 8;

struct QualityReport {
  double psnr = 0.0;  // dB
  double ssim = 0.0;
  int bits = 8;
};

double mean_squared_error(std::span<const double> a, std::span<const double> b);

// 10 log10(peak^2 / MSE).
double psnr(std::span<const double> a, std::span<const double> b, double peak = 255.0);

// Mean SSIM over all window x window blocks at stride 1, uniform weights,
// C1 = (0.01 peak)^2, C2 = (0.03 peak)^2.
double ssim(std::span<const double> a, std::span<const double> b, int width, int height,
            double peak = 255.0, int window = kDefaultSsimWindow);

// Scores a display image against the object it should depict; the truth is
// scaled to the display's peak before comparison.
QualityReport evaluate(const ObjectImage& truth, const DisplayImage& reconstruction);

}  // namespace ghostimg

#endif  // GHOSTIMG_METRICS_HPP_
