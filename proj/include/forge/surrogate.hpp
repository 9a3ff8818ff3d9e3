// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/image.hpp"

namespace forge {

/// Procedural stand-in for a negative screening image: bright resin, one
/// dark central cell with a darker nucleus and organelle-like distractors,
/// optional partial cells cut by the border, additive Gaussian noise.
/// Intensities are on a 16-bit scale.
struct SurrogateConfig {
  int width = 512;
  int height = 512;
  double cell_radius_min = 130.0;
  double cell_radius_max = 180.0;
  double centre_jitter_px = 20.0;
  double nucleus_fraction_min = 0.35;  // of the cell semi-axes
  double nucleus_fraction_max = 0.55;
  int distractors_min = 2;
  int distractors_max = 8;
  int partial_cells_max = 2;
  double noise = 0.05;  // Gaussian std as a fraction of background_intensity
  double background_intensity = 50000.0;
  double cell_intensity = 30000.0;
  double nucleus_intensity = 20000.0;
  double distractor_intensity = 12000.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SurrogateImage {
  std::string id;
  std::uint64_t seed = 0;
  GrayImage image;
  BinaryImage cell_mask;        // ground truth for the central cell
  BinaryImage distractor_mask;  // pixels covered by distractor organelles
};

/// Image i is drawn from derive_seed(config.seed, i) and named
/// "surrogate-NNNN".
std::vector<SurrogateImage> generate_surrogate_backgrounds(const SurrogateConfig& config, int count);

SurrogateImage generate_surrogate(const SurrogateConfig& config, int index);

}  // namespace forge
