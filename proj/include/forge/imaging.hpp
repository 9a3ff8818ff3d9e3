// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "forge/image.hpp"

namespace forge {

/// Sampled Gaussian of radius ceil(3 sigma), normalized to unit sum.
/// sigma == 0 yields the single tap {1}.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian convolution. Near the border the truncated kernel is
/// renormalized over the taps that fall inside the image.
GrayImage gaussian_blur(const GrayImage& image, double sigma);

double mean(std::span<const double> values);

/// Population standard deviation (divides by N).
double stddev(std::span<const double> values);

/// Linear interpolation between order statistics at h = (n - 1) q.
double quantile(std::span<const double> values, double q);

/// Disk structuring element: offsets with dx^2 + dy^2 <= r^2. Out-of-image
/// pixels count as background for both operations.
BinaryImage erode_disk(const BinaryImage& mask, int radius);
BinaryImage dilate_disk(const BinaryImage& mask, int radius);

struct Component {
  int label = 0;
  long area = 0;
  double cx = 0.0;
  double cy = 0.0;
  bool touches_border = false;
};

struct Labeling {
  Image2D<int> labels;  // 0 = background, components numbered from 1
  std::vector<Component> components;
};

/// Connected components of the nonzero pixels, connectivity 4 or 8.
Labeling label_components(const BinaryImage& mask, int connectivity);

/// Copy of the box region; out-of-image pixels are filled with `fill`.
GrayImage crop(const GrayImage& image, const Box& box, double fill = 0.0);

}  // namespace forge
