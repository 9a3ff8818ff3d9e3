// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "forge/image.hpp"

namespace forge {

struct SegmenterConfig {
  double smooth_sigma_px = 4.0;
  double threshold_factor = 0.9;
  int erosion_radius_px = 5;
  int dilation_radius_px = 8;
  long min_area_px = 2000;
  int connectivity = 8;
  bool dark_foreground = true;  // cells darker than the resin

  void validate() const;
};

/// Single connected region marking the selected cell.
struct CellMask {
  BinaryImage bits;
  long area_px = 0;
  double cx = 0.0;
  double cy = 0.0;
};

double mean_intensity(const GrayImage& image);

/// smooth -> threshold at threshold_factor * mean(image) -> erode -> label
/// -> drop components below min_area -> pick the component nearest the
/// image centre -> dilate. Components touching the border are only picked
/// when nothing else survives. Throws NoCellFound.
CellMask segment_central_cell(const GrayImage& image, const SegmenterConfig& config);

/// Pixels of the foreground before morphology (exposed for tests).
BinaryImage threshold_foreground(const GrayImage& image, const SegmenterConfig& config);

}  // namespace forge
