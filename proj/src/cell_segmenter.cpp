// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/cell_segmenter.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "forge/errors.hpp"
#include "forge/imaging.hpp"

namespace forge {

void SegmenterConfig::validate() const {
  if (!(threshold_factor > 0.0 && threshold_factor < 2.0)) throw InvalidParams("threshold_factor outside (0, 2)");
  if (smooth_sigma_px < 0.0 || erosion_radius_px < 0 || dilation_radius_px < 0) {
    throw InvalidParams("segmenter radii must be >= 0");
  }
  if (connectivity != 4 && connectivity != 8) throw InvalidParams("connectivity must be 4 or 8");
}

double mean_intensity(const GrayImage& image) { return mean(image.pixels()); }

BinaryImage threshold_foreground(const GrayImage& image, const SegmenterConfig& config) {
  config.validate();
  if (image.width() < 60 || image.height() < 60) throw InvalidParams("image smaller than 60x60");
  const double threshold = config.threshold_factor * mean_intensity(image);
  const GrayImage smooth = gaussian_blur(image, config.smooth_sigma_px);
  BinaryImage fg(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < fg.size(); ++i) {
    fg[i] = config.dark_foreground ? smooth[i] < threshold : smooth[i] > threshold;
  }
  return fg;
}

CellMask segment_central_cell(const GrayImage& image, const SegmenterConfig& config) {
  const BinaryImage fg = threshold_foreground(image, config);
  const BinaryImage eroded = erode_disk(fg, config.erosion_radius_px);
  const Labeling lab = label_components(eroded, config.connectivity);

  // Erosion pulls components away from the edge, so anything within the
  // erosion radius of it counts as touching.
  std::vector<bool> near_border(lab.components.size() + 1, false);
  const int band = config.erosion_radius_px + 1;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (x >= band && y >= band && x < image.width() - band && y < image.height() - band) continue;
      near_border[static_cast<std::size_t>(lab.labels.at(x, y))] = true;
    }
  }

  const double mx = 0.5 * (image.width() - 1);
  const double my = 0.5 * (image.height() - 1);
  const Component* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  bool best_border = true;
  for (const auto& c : lab.components) {
    if (c.area < config.min_area_px) continue;
    const double d = std::hypot(c.cx - mx, c.cy - my);
    const bool border = near_border[static_cast<std::size_t>(c.label)];
    if (std::tie(border, d) < std::tie(best_border, best_d)) {
      best = &c;
      best_d = d;
      best_border = border;
    }
  }
  if (!best) throw NoCellFound("no component of at least " + std::to_string(config.min_area_px) + " px");

  BinaryImage chosen(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = lab.labels[i] == best->label;

  CellMask mask;
  mask.bits = dilate_disk(chosen, config.dilation_radius_px);
  double sx = 0.0, sy = 0.0;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!mask.bits.at(x, y)) continue;
      ++mask.area_px;
      sx += x;
      sy += y;
    }
  }
  mask.cx = sx / static_cast<double>(mask.area_px);
  mask.cy = sy / static_cast<double>(mask.area_px);
  return mask;
}

}  // namespace forge
