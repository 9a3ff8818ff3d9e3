// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace forge {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma >= 0.0)) throw InvalidParams("gaussian sigma must be >= 0");
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
  }
  const double total = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& v : k) v /= total;
  return k;
}

namespace {

// One 1D pass along x (horizontal == true) or y.
GrayImage convolve_axis(const GrayImage& src, const std::vector<double>& kernel, bool horizontal) {
  const int w = src.width();
  const int h = src.height();
  const int radius = static_cast<int>(kernel.size() / 2);
  GrayImage out(w, h);
  const int len = horizontal ? w : h;
  const int lines = horizontal ? h : w;
  for (int line = 0; line < lines; ++line) {
    for (int i = 0; i < len; ++i) {
      const int lo = std::max(-radius, -i);
      const int hi = std::min(radius, len - 1 - i);
      double acc = 0.0;
      double norm = 0.0;
      for (int k = lo; k <= hi; ++k) {
        const double wk = kernel[k + radius];
        acc += wk * (horizontal ? src.at(i + k, line) : src.at(line, i + k));
        norm += wk;
      }
      (horizontal ? out.at(i, line) : out.at(line, i)) = acc / norm;
    }
  }
  return out;
}

}  // namespace

GrayImage gaussian_blur(const GrayImage& image, double sigma) {
  const auto kernel = gaussian_kernel(sigma);
  if (kernel.size() == 1 || image.empty()) return image;
  return convolve_axis(convolve_axis(image, kernel, true), kernel, false);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw InvalidParams("mean of empty range");
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw InvalidParams("quantile of empty range");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidParams("quantile level outside [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  // Only the two bracketing order statistics are needed.
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(lo), sorted.end());
  const double a = sorted[lo];
  double b = a;
  if (hi != lo) b = *std::min_element(sorted.begin() + static_cast<long>(lo) + 1, sorted.end());
  return a + (h - static_cast<double>(lo)) * (b - a);
}

namespace {

std::vector<int> disk_half_widths(int radius) {
  std::vector<int> half(2 * radius + 1);
  for (int dy = -radius; dy <= radius; ++dy) {
    half[dy + radius] = static_cast<int>(std::floor(std::sqrt(double(radius * radius - dy * dy))));
  }
  return half;
}

// prefix[y * (w + 1) + x] = number of set pixels in row y, columns [0, x).
std::vector<int> row_prefix_counts(const BinaryImage& mask) {
  const int w = mask.width();
  std::vector<int> prefix(static_cast<std::size_t>(w + 1) * mask.height(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    int* row = prefix.data() + static_cast<std::size_t>(y) * (w + 1);
    for (int x = 0; x < w; ++x) row[x + 1] = row[x] + (mask.at(x, y) != 0);
  }
  return prefix;
}

}  // namespace

BinaryImage erode_disk(const BinaryImage& mask, int radius) {
  if (radius < 0) throw InvalidParams("erosion radius must be >= 0");
  if (radius == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  const auto half = disk_half_widths(radius);
  const auto prefix = row_prefix_counts(mask);
  BinaryImage out(w, h, 0);
  for (int y = radius; y < h - radius; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      bool keep = true;
      for (int dy = -radius; dy <= radius && keep; ++dy) {
        const int hw = half[dy + radius];
        if (x - hw < 0 || x + hw >= w) {
          keep = false;
          break;
        }
        const int* row = prefix.data() + static_cast<std::size_t>(y + dy) * (w + 1);
        keep = (row[x + hw + 1] - row[x - hw]) == 2 * hw + 1;
      }
      out.at(x, y) = keep ? 1 : 0;
    }
  }
  return out;
}

BinaryImage dilate_disk(const BinaryImage& mask, int radius) {
  if (radius < 0) throw InvalidParams("dilation radius must be >= 0");
  if (radius == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  const auto half = disk_half_widths(radius);
  const auto prefix = row_prefix_counts(mask);
  BinaryImage out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int dy = -radius; dy <= radius; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        const int hw = half[dy + radius];
        const int lo = std::max(0, x - hw);
        const int hi = std::min(w - 1, x + hw);
        const int* row = prefix.data() + static_cast<std::size_t>(yy) * (w + 1);
        if (row[hi + 1] - row[lo] > 0) {
          out.at(x, y) = 1;
          break;
        }
      }
    }
  }
  return out;
}

Labeling label_components(const BinaryImage& mask, int connectivity) {
  if (connectivity != 4 && connectivity != 8) throw InvalidParams("connectivity must be 4 or 8");
  const int w = mask.width();
  const int h = mask.height();
  Labeling result{Image2D<int>(w, h, 0), {}};
  std::vector<std::pair<int, int>> stack;
  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y) || result.labels.at(x, y) != 0) continue;
      Component c;
      c.label = static_cast<int>(result.components.size()) + 1;
      double sx = 0.0;
      double sy = 0.0;
      result.labels.at(x, y) = c.label;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        const auto [px, py] = stack.back();
        stack.pop_back();
        ++c.area;
        sx += px;
        sy += py;
        if (px == 0 || py == 0 || px == w - 1 || py == h - 1) c.touches_border = true;
        for (int n = 0; n < connectivity; ++n) {
          const int nx = px + kDx[n];
          const int ny = py + kDy[n];
          if (!mask.contains(nx, ny) || !mask.at(nx, ny) || result.labels.at(nx, ny) != 0) continue;
          result.labels.at(nx, ny) = c.label;
          stack.emplace_back(nx, ny);
        }
      }
      c.cx = sx / static_cast<double>(c.area);
      c.cy = sy / static_cast<double>(c.area);
      result.components.push_back(c);
    }
  }
  return result;
}

GrayImage crop(const GrayImage& image, const Box& box, double fill) {
  GrayImage out(box.width, box.height, fill);
  for (int y = 0; y < box.height; ++y) {
    for (int x = 0; x < box.width; ++x) {
      const int sx = box.x0 + x;
      const int sy = box.y0 + y;
      if (image.contains(sx, sy)) out.at(x, y) = image.at(sx, sy);
    }
  }
  return out;
}

}  // namespace forge
